#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "fmlab/generators.hpp"

using namespace fmlab;

namespace {

using MPoly = GradedPoly<FieldElement>;

const std::vector<std::tuple<int, int, int>> kFields = {{2, 1, 1}, {3, 1, 1}, {3, 1, 2}, {2, 2, 1}, {2, 1, 3}};

Integer binomial(long n, long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational frac(const Integer& a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace

TEST(IndexSequence, Compositions) {
    EXPECT_EQ(compositions(0).size(), 1u);
    EXPECT_EQ(compositions(3), (std::vector<IndexSequence>{{1, 1, 1}, {1, 2}, {2, 1}, {3}}));
    for (int h = 1; h <= 8; ++h) EXPECT_EQ(compositions(h).size(), std::size_t{1} << (h - 1));
    EXPECT_EQ(norm({1, 2, 4}), 7);
}

TEST(PiValue, Examples) {
    const ModelContext ctx(NumberField::make(3, 1, 2));
    const auto pi = ctx.pi();
    EXPECT_EQ(pi_value({}, ctx), ctx.one());
    EXPECT_EQ(pi_value({1}, ctx), pi - pi.pow(std::int64_t{3}));
    EXPECT_EQ(pi_value({1, 1}, ctx), (pi - pi.pow(std::int64_t{9})) * (pi - pi.pow(std::int64_t{3})));
    EXPECT_EQ(pi_value({2, 1}, ctx) * pi_value_inverse({2, 1}, ctx), ctx.one());
}

TEST(VMonomial, Examples) {
    const ModelContext ctx(NumberField::make(3, 1, 1));
    EXPECT_EQ(v_monomial({}, ctx), MPoly::constant(ctx.one()));
    EXPECT_EQ(v_monomial({2}, ctx), MPoly::variable(v(2), ctx.one()));
    EXPECT_EQ(v_monomial({1, 2}, ctx), MPoly::term(Monomial::of(v(1)) * Monomial::of(v(2), 3), ctx.one()));
    for (const auto& I : compositions(4)) EXPECT_EQ(v_monomial(I, ctx).homogeneous_degree(3), 2 * (81 - 1));
}

TEST(LogAraki, Examples) {
    const ModelContext ctx(NumberField::make(2, 1, 1));
    const auto pi = ctx.pi();
    const std::int64_t q = 2;
    EXPECT_EQ(log_araki(0, ctx), MPoly::constant(ctx.one()));
    EXPECT_EQ(log_araki(1, ctx), MPoly::variable(v(1), (pi - pi.pow(q)).inverse()));
    MPoly l2 = MPoly::variable(v(2), (pi - pi.pow(q * q)).inverse());
    l2.add_term(Monomial::of(v(1), 1 + q), ((pi - pi.pow(q * q)) * (pi - pi.pow(q))).inverse());
    EXPECT_EQ(log_araki(2, ctx), l2);
}

TEST(LogHazewinkel, Examples) {
    for (auto [p, f, e] : kFields) {
        const ModelContext ctx(NumberField::make(p, f, e));
        const auto ipi = ctx.pi().inverse();
        const std::int64_t q = ctx.q();
        EXPECT_EQ(log_hazewinkel(0, ctx), MPoly::constant(ctx.one()));
        EXPECT_EQ(log_hazewinkel(1, ctx), MPoly::variable(V(1), ipi));
        MPoly l2 = MPoly::variable(V(2), ipi);
        l2.add_term(Monomial::of(V(1), 1 + q), ipi * ipi);
        EXPECT_EQ(log_hazewinkel(2, ctx), l2);
    }
}

TEST(LogExpansion, HomogeneousOfTheRightDegree) {
    for (auto [p, f, e] : kFields) {
        const SymbolicContext ctx(NumberField::make(p, f, e));
        const std::int64_t q = ctx.q();
        for (int h = 1; h <= 4; ++h) {
            EXPECT_EQ(log_araki(h, ctx).homogeneous_degree(q), 2 * (checked_pow(q, h) - 1));
            EXPECT_EQ(log_hazewinkel(h, ctx).homogeneous_degree(q), 2 * (checked_pow(q, h) - 1));
        }
    }
}

TEST(Relations, HoldOnBothRoutes) {
    for (auto [p, f, e] : kFields) {
        const auto K = NumberField::make(p, f, e);
        const SymbolicContext sym(K);
        const ModelContext model(K);
        for (int h = 0; h <= 3; ++h) {
            EXPECT_TRUE(verify_araki(h, sym)) << K.label() << " h=" << h;
            EXPECT_TRUE(verify_hazewinkel(h, sym)) << K.label() << " h=" << h;
            EXPECT_TRUE(verify_araki(h, model)) << K.label() << " h=" << h;
            EXPECT_TRUE(verify_hazewinkel(h, model)) << K.label() << " h=" << h;
        }
    }
}

TEST(Relations, DetectAWrongExpansion) {
    // A perturbed logarithm must break the relation check.
    const ModelContext ctx(NumberField::make(3, 1, 1));
    const auto l1 = log_hazewinkel(1, ctx);
    const MPoly bad = l1 + MPoly::variable(V(1), ctx.one());
    EXPECT_FALSE(bad.scaled(ctx.pi()) == MPoly::variable(V(1), ctx.one()));
}

TEST(ArakiInHazewinkel, Examples) {
    const ModelContext ctx(NumberField::make(3, 1, 1));
    const auto pi = ctx.pi();
    const auto images = araki_in_hazewinkel(3, ctx);
    EXPECT_EQ(images[0], MPoly::constant(ctx.one()));
    EXPECT_EQ(images[1], MPoly::variable(V(1), (pi - pi.pow(std::int64_t{3})) / pi));
    for (auto [p, f, e] : kFields) {
        const SymbolicContext s(NumberField::make(p, f, e));
        for (int h = 1; h <= 3; ++h) EXPECT_TRUE(araki_congruent_to_hazewinkel(h, s));
    }
}

TEST(ArakiInHazewinkel, SubstitutionMatchesLogs) {
    const SymbolicContext ctx(NumberField::make(2, 1, 1));
    const auto images = araki_in_hazewinkel(3, ctx);
    using P = GradedPoly<PiFraction>;
    for (int h = 1; h <= 3; ++h) {
        const P sub = log_araki(h, ctx).substitute([&](const Variable& var) -> std::optional<P> {
            if (var.family == Family::ArakiV) return images.at(static_cast<std::size_t>(var.index));
            return std::nullopt;
        });
        EXPECT_EQ(sub, log_hazewinkel(h, ctx));
    }
}

TEST(WInt, Examples) {
    const ModelContext ctx(NumberField::make(3, 1, 1));
    const auto one = ctx.one();
    EXPECT_EQ(w_int(0, 3, ctx)[0], power_sum(0, 3, ctx));
    EXPECT_TRUE(w_int(1, 1, ctx)[1].is_zero());
    // (x_1^3 + x_2^3 - (x_1 + x_2)^3) / 3 expanded by binomial coefficients.
    MPoly oracle;
    for (long k = 1; k < 3; ++k)
        oracle.add_term(Monomial::of(x(1), k) * Monomial::of(x(2), 3 - k), ctx.from_rational(frac(-binomial(3, k), 3)));
    EXPECT_EQ(w_int(1, 2, ctx)[1], oracle);
    (void)one;
}

TEST(WInt, BinomialOracleForPrimeQ) {
    for (long p : {2, 3, 5}) {
        const ModelContext ctx(NumberField::make(p, 1, 1));
        MPoly oracle;
        for (long k = 1; k < p; ++k)
            oracle.add_term(Monomial::of(x(1), k) * Monomial::of(x(2), p - k), ctx.from_rational(frac(-binomial(p, k), p)));
        const auto w = w_int(1, 2, ctx);
        EXPECT_EQ(w[1], oracle) << p;
        EXPECT_TRUE(is_integral(w[1], ctx));
    }
}

TEST(WSeq, Examples) {
    const ModelContext ctx(NumberField::make(2, 1, 1));
    EXPECT_EQ(w_seq({}, 2, ctx), power_sum(0, 2, ctx));
    EXPECT_TRUE(w_seq({1}, 1, ctx).is_zero());
}

TEST(WSeq, SymmetricIntegralAndCongruent) {
    for (auto [p, f, e] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {3, 1, 1}, {2, 1, 2}}) {
        const ModelContext ctx(NumberField::make(p, f, e));
        WSequence<ModelContext> ws(2, ctx);
        for (int n = 0; n <= 3; ++n)
            for (const auto& I : compositions(n)) {
                const auto& w = ws(I);
                EXPECT_TRUE(is_symmetric(w, 2));
                EXPECT_TRUE(is_integral(w, ctx));
                if (!I.empty()) {
                    EXPECT_TRUE(ws.congruence_holds(I));
                }
            }
        for (const auto& w : w_int(3, 2, ctx)) EXPECT_TRUE(is_symmetric(w, 2));
    }
}

TEST(WSeq, DiffersFromWIntInGeneral) {
    // w_(1) = (pi / Pi(1)) w_1, which differs from w_1 as pi^q != 0.
    const ModelContext ctx(NumberField::make(2, 1, 1));
    const auto w1 = w_int(1, 2, ctx)[1];
    const auto ws1 = w_seq({1}, 2, ctx);
    EXPECT_FALSE(w1 == ws1);
    EXPECT_EQ(ws1, w1.scaled(ctx.pi() / pi_of_height(1, ctx)));
}

TEST(IsSymmetric, RejectsAsymmetric) {
    const ModelContext ctx(NumberField::make(3, 1, 1));
    EXPECT_FALSE(is_symmetric(MPoly::variable(x(1), ctx.one()), 2));
    EXPECT_TRUE(is_symmetric(power_sum(2, 3, ctx), 3));
}

TEST(AgreementModPi, TruncatedMatchesExact) {
    for (auto [p, f, e] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {3, 1, 2}, {2, 2, 1}, {2, 1, 3}, {5, 1, 2}}) {
        const auto K = NumberField::make(p, f, e);
        const SymbolicContext exact(K);
        for (int h = 1; h <= 3; ++h) {
            EXPECT_EQ(araki_congruent_to_hazewinkel_truncated(h, K), araki_congruent_to_hazewinkel(h, exact));
            EXPECT_TRUE(araki_congruent_to_hazewinkel_truncated(h, K));
        }
        const std::int64_t prec = 7;
        const SymbolicContext cut(K, K.q(), 1, prec);
        const auto a = araki_in_hazewinkel(3, exact);
        const auto b = araki_in_hazewinkel(3, cut);
        EXPECT_EQ(reduce_mod_pi(a[3], exact), reduce_mod_pi(b[3], cut));
    }
    EXPECT_THROW(araki_congruent_to_hazewinkel_truncated(0, NumberField::make(2, 1, 1)), InvalidInput);
}
