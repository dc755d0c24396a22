#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fmlab/graded_poly.hpp"
#include "fmlab/json_io.hpp"

using namespace fmlab;

namespace {

using QPoly = GradedPoly<Rational>;

Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Monomial random_monomial(std::mt19937_64& rng, Family fam = Family::HazewinkelV) {
    std::uniform_int_distribution<int> count(0, 3), index(1, 4), expo(1, 5);
    std::vector<Monomial::Factor> f;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) f.emplace_back(Variable{fam, 'A', index(rng)}, expo(rng));
    return Monomial(std::move(f));
}

QPoly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> terms(0, 4), num(-5, 5);
    QPoly p;
    const int n = terms(rng);
    for (int k = 0; k < n; ++k) p.add_term(random_monomial(rng), frac(num(rng), 3));
    return p;
}

}  // namespace

TEST(Degree, Examples) {
    EXPECT_EQ(Monomial().degree(3), 0);
    EXPECT_EQ(Monomial::of(V(1)).degree(3), 4);
    // V_1 * V_2^2 at q = 2: 2(2-1) + 2 * 2(4-1) = 2 + 12.
    EXPECT_EQ((Monomial::of(V(1)) * Monomial::of(V(2), 2)).degree(2), 2 * (2 - 1) + 2 * 2 * (4 - 1));
    EXPECT_EQ((Monomial::of(V(1)) * Monomial::of(V(2), 2)).degree(2), 14);
    EXPECT_EQ(degree(t(3), 2), 14);
    EXPECT_EQ(degree(v(2), 5), 48);
}

TEST(Compare, Examples) {
    EXPECT_TRUE(compare(Monomial::of(V(1)), Monomial::of(V(2))) < 0);
    const Monomial m = Monomial::of(V(1), 2) * Monomial::of(V(3));
    EXPECT_TRUE(compare(m, m) == 0);
    EXPECT_TRUE(compare(Monomial::of(V(2)), Monomial::of(V(1), 100)) > 0);
    EXPECT_THROW(compare(Monomial::of(V(1)), Monomial::of(t(1))), InvalidInput);
}

TEST(Compare, TotalOrderAndMultiplicative) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const Monomial a = random_monomial(rng), b = random_monomial(rng), c = random_monomial(rng);
        const auto ab = compare(a, b), ba = compare(b, a);
        EXPECT_EQ(ab < 0, ba > 0);
        EXPECT_EQ(ab == 0, a == b);
        if (compare(a, b) < 0 && compare(b, c) < 0) {
            EXPECT_TRUE(compare(a, c) < 0);
        }
        if (ab < 0) {
            EXPECT_TRUE(compare(a * c, b * c) < 0);
        }
    }
}

TEST(Degree, IsAGrading) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const Monomial a = random_monomial(rng), b = random_monomial(rng);
        for (std::int64_t q : {2, 3, 4, 5}) EXPECT_EQ((a * b).degree(q), a.degree(q) + b.degree(q));
    }
}

TEST(LeadingMonomial, Examples) {
    const QPoly v1 = QPoly::variable(V(1), 1);
    EXPECT_EQ(v1.leading_monomial(), Monomial::of(V(1)));
    QPoly p = QPoly::variable(V(2), 1);
    p.add_term(Monomial::of(V(1), 5), 1);
    EXPECT_EQ(p.leading_monomial(), Monomial::of(V(2)));
    QPoly r = QPoly::variable(V(2), 1);
    r.add_term(Monomial::of(V(1)) * Monomial::of(V(2)), 3);
    EXPECT_EQ(r.leading_monomial(), Monomial::of(V(1)) * Monomial::of(V(2)));
    EXPECT_THROW(QPoly().leading_monomial(), InvalidInput);
}

TEST(GradedPoly, NoStoredZeros) {
    QPoly p = QPoly::variable(V(1), 2);
    p.add_term(Monomial::of(V(1)), -2);
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(p.size(), 0u);
    EXPECT_TRUE(QPoly::term(Monomial::of(V(3)), 0).is_zero());
}

TEST(GradedPoly, RingAxiomsOnRandomTriples) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const QPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * QPoly::constant(1), a);
        EXPECT_EQ(a.pow(3), a * a * a);
    }
}

TEST(GradedPoly, HomogeneousDegree) {
    QPoly p = QPoly::variable(V(2), 1);
    p.add_term(Monomial::of(V(1), 4), 1);
    EXPECT_EQ(p.homogeneous_degree(3), 16);
    p.add_term(Monomial::of(V(1)), 1);
    EXPECT_FALSE(p.homogeneous_degree(3).has_value());
}

TEST(GradedPoly, RingTagsDoNotMix) {
    const QPoly a = QPoly::variable(V(1, 'A'), 1), b = QPoly::variable(V(1, 'B'), 1);
    EXPECT_THROW(a + b, InvalidInput);
    EXPECT_THROW(a * b, InvalidInput);
    EXPECT_NO_THROW(QPoly::add_mixed(a, b));
    EXPECT_NO_THROW(a + QPoly::constant(2));
}

TEST(GradedPoly, SubstituteIsARingMap) {
    std::mt19937_64 rng(24);
    auto image = [](const Variable& var) -> std::optional<QPoly> {
        if (var.index == 1) return QPoly::variable(V(2), 1) + QPoly::constant(1);
        return std::nullopt;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const QPoly a = random_poly(rng), b = random_poly(rng);
        EXPECT_EQ((a * b).substitute(image), a.substitute(image) * b.substitute(image));
        EXPECT_EQ((a + b).substitute(image), a.substitute(image) + b.substitute(image));
    }
}

TEST(Json, TermsDescendAndRoundTrip) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        const QPoly a = random_poly(rng);
        const Json j = poly_to_json(a);
        const auto& terms = j.at("terms");
        for (std::size_t k = 1; k < terms.size(); ++k) {
            const Monomial hi = monomial_from_json(terms[k - 1].at("mono"), 'A');
            const Monomial lo = monomial_from_json(terms[k].at("mono"), 'A');
            EXPECT_TRUE(compare(hi, lo) > 0);
        }
        const auto back = poly_from_json<Rational>(Json::parse(j.dump()), rational_from_json);
        EXPECT_EQ(back, a);
    }
    const QPoly mixed = QPoly::add_mixed(QPoly::variable(V(1, 'A'), 1), QPoly::variable(t(2, 'B'), 1));
    const Json jm = poly_to_json(mixed);
    EXPECT_TRUE(jm.at("ring").is_null());
    EXPECT_EQ(poly_from_json<Rational>(jm, rational_from_json), mixed);
}
