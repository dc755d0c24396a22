#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "fmlab/number_field.hpp"

using namespace fmlab;

namespace {

const std::vector<std::tuple<int, int, int>> kFields = {
    {2, 1, 1}, {2, 1, 3}, {3, 1, 1}, {3, 1, 2}, {5, 1, 2}, {2, 2, 1}, {3, 2, 1}, {3, 2, 2}, {2, 3, 1}, {5, 2, 1}};

FieldElement random_element(const NumberField& K, std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 12);
    for (;;) {
        std::vector<Rational> c;
        for (int i = 0; i < K.degree(); ++i) c.emplace_back(num(rng), den(rng));
        for (auto& x : c) x.canonicalize();
        FieldElement z(K, c);
        if (!nonzero || !z.is_zero()) return z;
    }
}

}  // namespace

TEST(NumberField, BaseCaseQ3) {
    const auto K = NumberField::make(3, 1, 1);
    EXPECT_EQ(K.q(), 3);
    EXPECT_EQ(K.degree(), 1);
    EXPECT_EQ(K.uniformizer(), K.from_integer(3));
}

TEST(NumberField, EisensteinSquareRootOfThree) {
    const auto K = NumberField::make(3, 1, 2, std::nullopt, IntPoly{-3, 0, 1});
    EXPECT_EQ(K.uniformizer().pow(std::int64_t{2}), K.from_integer(3));
    EXPECT_EQ(K.description().eisenstein_minpoly, (IntPoly{-3, 0, 1}));
}

TEST(NumberField, UnramifiedQuadraticOverF2) {
    // Exhaustive root search: x^2 + x + 1 has no root in F_2.
    for (int a = 0; a < 2; ++a) EXPECT_NE((a * a + a + 1) % 2, 0);
    const auto K = NumberField::make(2, 2, 1, IntPoly{1, 1, 1});
    EXPECT_EQ(K.q(), 4);
    EXPECT_EQ(NumberField::make(2, 2, 1).description().unramified_minpoly, (IntPoly{1, 1, 1}));
}

TEST(NumberField, DefaultUnramifiedPolynomialIsLexSmallest) {
    // Oracle: scan monic polynomials in lexicographic order of (c_{f-1}, ..., c_0)
    // and take the first without roots (enough for degree <= 3).
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 2}, {2, 3}, {3, 3}}) {
        IntPoly best;
        const int count = f == 2 ? p * p : p * p * p;
        std::vector<IntPoly> all;
        for (int code = 0; code < count; ++code) {
            IntPoly u(static_cast<std::size_t>(f) + 1, 0);
            u[static_cast<std::size_t>(f)] = 1;
            int rest = code;
            for (int i = 0; i < f; ++i) {
                u[static_cast<std::size_t>(i)] = rest % p;
                rest /= p;
            }
            bool root = false;
            for (int x = 0; x < p; ++x) {
                long v = 0;
                for (int i = f; i >= 0; --i) v = (v * x + u[static_cast<std::size_t>(i)]) % p;
                root = root || v == 0;
            }
            if (!root) all.push_back(u);
        }
        std::sort(all.begin(), all.end(), [](const IntPoly& a, const IntPoly& b) {
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        });
        EXPECT_EQ(NumberField::make(p, f, 1).description().unramified_minpoly, all.front()) << p << "," << f;
    }
}

TEST(NumberField, RejectsBadInput) {
    EXPECT_THROW(NumberField::make(4, 1, 1), InvalidInput);
    EXPECT_THROW(NumberField::make(2, 2, 1, IntPoly{1, 0, 1}), InvalidInput);         // (x+1)^2 mod 2
    EXPECT_THROW(NumberField::make(3, 1, 2, std::nullopt, IntPoly{-9, 0, 1}), InvalidInput);  // p^2 | E(0)
    EXPECT_THROW(NumberField::make(3, 1, 2, std::nullopt, IntPoly{-3, 1, 1}), InvalidInput);  // unit middle term
    EXPECT_THROW(NumberField::make(3, 0, 1), InvalidInput);
}

TEST(Valuation, Examples) {
    const auto K = NumberField::make(3, 1, 2);
    EXPECT_EQ(K.uniformizer().valuation(), 1);
    EXPECT_EQ(K.from_integer(3).valuation(), 2);
    EXPECT_FALSE(K.zero().valuation().has_value());
    const auto Q3 = NumberField::make(3, 1, 1);
    const auto pi = Q3.uniformizer();
    EXPECT_EQ((pi - pi.pow(std::int64_t{3})).valuation(), 1);
    EXPECT_EQ(Q3.from_rational(Rational(5, 27)).valuation(), -3);
}

TEST(Valuation, AdditiveOnRandomPairs) {
    std::mt19937_64 rng(17);
    for (auto [p, f, e] : kFields) {
        const auto K = NumberField::make(p, f, e);
        for (int trial = 0; trial < 200; ++trial) {
            auto x = random_element(K, rng, true), y = random_element(K, rng, true);
            if (trial % 3 == 0) x = x * K.uniformizer().pow(std::int64_t{trial % 5});
            ASSERT_EQ(*(x * y).valuation(), *x.valuation() + *y.valuation()) << K.label();
            const auto s = (x + y).valuation();
            if (s) {
                ASSERT_GE(*s, std::min(*x.valuation(), *y.valuation())) << K.label();
            }
        }
    }
}

TEST(FieldElement, FieldAxiomsOnRandomSamples) {
    std::mt19937_64 rng(3);
    for (auto [p, f, e] : kFields) {
        const auto K = NumberField::make(p, f, e);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_element(K, rng), b = random_element(K, rng), c = random_element(K, rng, true);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ(c * c.inverse(), K.one());
            EXPECT_EQ(a + K.zero(), a);
        }
    }
}

TEST(Residue, Examples) {
    const auto K = NumberField::make(5, 1, 3);
    EXPECT_TRUE(K.one().residue().is_one());
    EXPECT_TRUE(K.uniformizer().residue().is_zero());
    EXPECT_TRUE((K.from_integer(5) / K.uniformizer().pow(std::int64_t{3})).residue().is_one());
    EXPECT_THROW(K.uniformizer().inverse().residue(), InvalidInput);
    const auto F4 = NumberField::make(2, 2, 1);
    EXPECT_EQ(F4.unramified_generator().residue(), FiniteFieldElement::generator(F4.residue_field()));
}

TEST(Residue, RingHomomorphismWithKernelTheMaximalIdeal) {
    std::mt19937_64 rng(5);
    for (auto [p, f, e] : kFields) {
        const auto K = NumberField::make(p, f, e);
        std::vector<FieldElement> sample;
        std::uniform_int_distribution<int> small(-4, 4);
        for (int k = 0; k < 10; ++k) {
            std::vector<Rational> c;
            for (int i = 0; i < K.degree(); ++i) c.emplace_back(small(rng));
            sample.emplace_back(K, c);
        }
        for (const auto& x : sample) {
            EXPECT_EQ(x.residue().is_zero(), !x.is_zero() ? *x.valuation() > 0 : true);
            for (const auto& y : sample) {
                EXPECT_EQ((x * y).residue(), x.residue() * y.residue());
                EXPECT_EQ((x + y).residue(), x.residue() + y.residue());
            }
        }
    }
}

TEST(FieldEmbedding, InjectiveRingMapRescalingValuation) {
    std::mt19937_64 rng(9);
    const std::vector<std::pair<std::tuple<int, int, int>, std::tuple<int, int, int>>> towers = {
        {{3, 1, 1}, {3, 1, 2}}, {{2, 1, 1}, {2, 2, 1}}, {{3, 1, 1}, {3, 2, 2}}, {{3, 2, 1}, {3, 2, 2}}, {{5, 1, 2}, {5, 1, 4}}};
    for (const auto& [lo, hi] : towers) {
        const auto K = NumberField::make(std::get<0>(lo), std::get<1>(lo), std::get<2>(lo));
        const auto L = NumberField::make(std::get<0>(hi), std::get<1>(hi), std::get<2>(hi));
        const auto emb = FieldEmbedding::make(K, L);
        const std::int64_t r = L.e() / K.e();
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_element(K, rng, true), b = random_element(K, rng);
            EXPECT_EQ(emb(a * b), emb(a) * emb(b));
            EXPECT_EQ(emb(a + b), emb(a) + emb(b));
            EXPECT_FALSE(emb(a).is_zero());
            EXPECT_EQ(*emb(a).valuation(), r * *a.valuation());
        }
        EXPECT_EQ(emb(K.one()), L.one());
    }
}

TEST(FiniteField, FrobeniusOrbitCloses) {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
        const auto F = FiniteField::make(p, n);
        Integer max_order = 0;
        for_each_element(F, [&](const FiniteFieldElement& x) {
            EXPECT_EQ(x.frobenius(n), x);
            if (!x.is_zero()) max_order = std::max(max_order, x.multiplicative_order());
        });
        EXPECT_EQ(max_order, F.size() - 1);
    }
}

TEST(PrimitiveRootOf, Examples) {
    const auto F3 = FiniteField::make(3, 1);
    EXPECT_TRUE(primitive_root_of(FiniteFieldElement::one(F3), 1).is_one());

    // Oracle: enumerate the units of F_9 by hand, keep 4th roots of 1 of
    // maximal order, and take the lexicographically smallest coordinates.
    const auto F9 = FiniteField::make(3, 2);
    std::optional<FiniteFieldElement> expected;
    for (int a = 0; a < 3 && !expected; ++a)
        for (int b = 0; b < 3 && !expected; ++b) {
            FiniteFieldElement c(F9, {a, b});
            if (c.is_zero() || !c.pow(Integer(4)).is_one()) continue;
            if (c.multiplicative_order() == 4) expected = c;
        }
    const auto c = primitive_root_of(FiniteFieldElement::one(F9), 4);
    EXPECT_EQ(c, *expected);
    EXPECT_EQ(c.multiplicative_order(), 4);
    EXPECT_EQ(c * c, -FiniteFieldElement::one(F9));

    const auto F4 = FiniteField::make(2, 2);
    const auto g = primitive_root_of(FiniteFieldElement::one(F4), 3);
    EXPECT_EQ(g.multiplicative_order(), 3);

    EXPECT_THROW(primitive_root_of(FiniteFieldElement::from_int(F3, 2), 2), InvalidInput);  // -1 is no square in F_3
}

TEST(FiniteFieldEmbedding, IsRingMap) {
    const auto F4 = FiniteField::make(2, 2), F16 = FiniteField::make(2, 4);
    const auto emb = FiniteFieldEmbedding::make(F4, F16);
    for_each_element(F4, [&](const FiniteFieldElement& x) {
        for_each_element(F4, [&](const FiniteFieldElement& y) {
            EXPECT_EQ(emb(x * y), emb(x) * emb(y));
            EXPECT_EQ(emb(x + y), emb(x) + emb(y));
        });
    });
}
