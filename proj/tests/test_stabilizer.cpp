#include <vector>

#include <gtest/gtest.h>

#include "fmlab/stabilizer.hpp"

using namespace fmlab;

namespace {

Extension totally_ramified(long p, int e, std::optional<IntPoly> E = std::nullopt) {
    return Extension::make(NumberField::make(p, 1, 1), NumberField::make(p, 1, e, std::nullopt, E));
}

}  // namespace

TEST(SigmaPresentation, Examples) {
    const auto s = sigma_presentation(NumberField::make(3, 1, 1), 1, 2);
    ASSERT_EQ(s.relations.size(), 2u);
    const auto one = FiniteFieldElement::one(s.field);
    FFPoly r1;
    r1.add_term(Monomial::of(t(1)) * Monomial::of(v(1), 3), one);
    r1.add_term(Monomial::of(v(1)) * Monomial::of(t(1), 3), -one);
    EXPECT_EQ(s.relations[0], r1);
    EXPECT_TRUE(s.relations_homogeneous());
    EXPECT_TRUE(sigma_presentation(NumberField::make(2, 1, 1), 3, 0).relations.empty());
    EXPECT_THROW(sigma_presentation(NumberField::make(2, 1, 1), 0, 1), InvalidInput);
}

TEST(SigmaPresentation, HomogeneousAcrossFields) {
    for (long p : {2, 3, 5})
        for (int h = 1; h <= 3; ++h) EXPECT_TRUE(sigma_presentation(NumberField::make(p, 1, 1), h, 2 * h).relations_homogeneous());
    EXPECT_TRUE(sigma_presentation(NumberField::make(2, 2, 1), 2, 3).relations_homogeneous());
}

TEST(Kappa, ConstantAndExponent) {
    const auto ext = totally_ramified(3, 2);
    const auto k = kappa_constant(ext, 1);
    EXPECT_TRUE(k.from_alpha.is_one());
    EXPECT_TRUE(k.agree);
    EXPECT_EQ(k.exponent, Integer(4));
    // With pi_K = 2 pi_L^2 the constant is the residue 2 of alpha = 1/2.
    const auto k2 = kappa_constant(totally_ramified(3, 2, IntPoly{-6, 0, 1}), 1);
    EXPECT_TRUE(k2.agree);
    EXPECT_EQ(k2.from_alpha, FiniteFieldElement::from_int(k2.from_alpha.field(), 2));
}

TEST(Kappa, ImageIsAPurePowerOfMinimalDegree) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {2, 3}}) {
        const auto ext = totally_ramified(p, e);
        for (int j = 1; j <= 2 && j * e <= 4; ++j) {
            const auto k = kappa_constant(ext, j);
            EXPECT_TRUE(k.agree);
            const auto im = kappa_image(ext, j * e, j);
            ASSERT_EQ(im.size(), 1u);
            EXPECT_EQ(im.leading_monomial(), Monomial::of(v(j, 'B'), static_cast<std::int64_t>(k.exponent.get_si())));
            EXPECT_EQ(im.terms().begin()->second, k.from_alpha);
            // Generators below h map to zero.
            for (int h = 1; h < j * e; ++h) EXPECT_TRUE(kappa_image(ext, h, j).is_zero());
            EXPECT_TRUE(kappa_relation_consistent(ext, j * e, 1));
            EXPECT_TRUE(kappa_relation_consistent(ext, j * e, 2));
        }
    }
}

TEST(ThetaTame, RootOfUnityConstant) {
    const auto th = theta_tame(totally_ramified(3, 2), 2);
    ASSERT_TRUE(th.target.c.has_value());
    const auto& c = *th.target.c;
    EXPECT_EQ(th.target.field.size(), Integer(9));
    EXPECT_EQ(th.root_order, Integer(4));
    EXPECT_EQ(c.multiplicative_order(), Integer(4));
    EXPECT_EQ(c.pow(th.root_order), *th.epsilon_alpha);
    EXPECT_EQ(th.target.M, 8);
    EXPECT_EQ(th.target.coproduct_bound, 2);
    EXPECT_EQ(th.source.coproduct_bound, 2);
    for (int i = 1; i <= th.target.M; ++i) {
        const auto& r = th.target.relation(i);
        EXPECT_EQ(r.exponent, 3);
        EXPECT_EQ(r.coefficient, c.pow(ipow(3, static_cast<std::uint64_t>(i)) - 1));
        EXPECT_EQ(th.image[static_cast<std::size_t>(i - 1)], i);
    }
    EXPECT_THROW(theta_tame(totally_ramified(3, 2), 3), InvalidInput);
    EXPECT_THROW(theta_tame(totally_ramified(2, 2), 2), InvalidInput);
}

TEST(ThetaTame, WellDefinedAcrossCases) {
    for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {2, 3}, {5, 3}}) {
        const auto ext = totally_ramified(p, e);
        for (int h = e; h <= 2 * e && checked_pow(p, h) <= 20000; h += e) {
            const auto th = theta_tame(ext, h, 2 * h);
            EXPECT_TRUE(verify_theta_well_defined(th.target)) << p << "," << e << " h=" << h;
            EXPECT_EQ(th.target.c->pow(th.root_order), *th.epsilon_alpha);
            for (int k = 1; k < th.source.coproduct_bound && k <= 3; ++k) EXPECT_TRUE(theta_is_coalgebra_map(k, th));
        }
    }
}

TEST(ThetaTame, NonTrivialEpsilon) {
    const auto th = theta_tame(totally_ramified(3, 2, IntPoly{-6, 0, 1}), 2);
    EXPECT_FALSE(th.epsilon_alpha->is_one());
    EXPECT_EQ(th.target.c->pow(th.root_order), *th.epsilon_alpha);
    EXPECT_EQ(th.target.c->multiplicative_order(), Integer(8));
    EXPECT_TRUE(verify_theta_well_defined(th.target));
}

TEST(ThetaUnramified, KillsNonDivisibleIndices) {
    const auto ext = Extension::make(NumberField::make(2, 1, 1), NumberField::make(2, 2, 1));
    const auto th = theta_unramified(ext, 2);
    EXPECT_EQ(th.target.generators(), (std::vector<int>{2, 4}));
    EXPECT_FALSE(th.image[0].has_value());
    EXPECT_FALSE(th.image[2].has_value());
    EXPECT_EQ(th.image[3], 4);
    EXPECT_EQ(th.target.coproduct_bound, 2);
    for (int k = 1; k < th.source.coproduct_bound; ++k) EXPECT_TRUE(theta_is_coalgebra_map(k, th));
    const auto th4 = theta_unramified(ext, 4);
    for (int k = 1; k < th4.source.coproduct_bound; ++k) EXPECT_TRUE(theta_is_coalgebra_map(k, th4)) << k;
    EXPECT_THROW(theta_unramified(ext, 3), InvalidInput);
}

TEST(ThetaUnramified, TrivialExtensionIsIdentity) {
    const auto ext = Extension::make(NumberField::make(3, 1, 1), NumberField::make(3, 1, 1));
    const auto th = theta_unramified(ext, 2);
    for (int i = 1; i <= th.target.M; ++i) EXPECT_EQ(th.image[static_cast<std::size_t>(i - 1)], i);
}

TEST(Coproduct, LowDegreeExamples) {
    const auto F = FiniteField::make(2, 1);
    const auto pres = full_stabilizer(F, 2, 3, 6, 1);
    const auto one = FiniteFieldElement::one(F);
    const FFPoly d1 = coproduct_low(1, pres);
    FFPoly e1 = FFPoly::variable(t(1, 'L'), one);
    e1 = FFPoly::add_mixed(e1, FFPoly::variable(t(1, 'R'), one));
    EXPECT_EQ(d1, e1);
    // Delta(t_2) = t_2 (x) 1 + t_1 (x) t_1^2 + 1 (x) t_2.
    FFPoly e2 = FFPoly::add_mixed(FFPoly::variable(t(2, 'L'), one), FFPoly::variable(t(2, 'R'), one));
    e2 = FFPoly::add_mixed(e2, FFPoly::mul_mixed(FFPoly::variable(t(1, 'L'), one), FFPoly::variable(t(1, 'R'), one).pow(2)));
    EXPECT_EQ(coproduct_low(2, pres), e2);
    EXPECT_THROW(coproduct_low(3, pres), InvalidInput);
}

TEST(Coproduct, CoassociativeAndHopfIdeal) {
    const auto th = theta_tame(totally_ramified(5, 2), 4, 4);
    for (int k = 1; k < th.source.coproduct_bound && k <= 3; ++k) {
        EXPECT_TRUE(coassociative(k, th.source));
        EXPECT_TRUE(coassociative(k, th.target));
    }
    for (int i = 1; i < th.target.coproduct_bound; ++i) EXPECT_TRUE(relations_are_hopf_ideal(i, th.target));
    const auto F = FiniteField::make(3, 2);
    const auto full = full_stabilizer(F, 3, 2, 4, 1);
    for (int k = 1; k < 2; ++k) EXPECT_TRUE(coassociative(k, full));
}
