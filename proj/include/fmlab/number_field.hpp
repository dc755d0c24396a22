#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fmlab/finite_field.hpp"
#include "fmlab/rational.hpp"

namespace fmlab {

/// Integer polynomial, coefficients low-to-high.
using IntPoly = std::vector<std::int64_t>;

/// Canonical description of a p-adic field model K = Q[x,y]/(u(x), E(y)):
/// u monic of degree f and irreducible mod p (the unramified part), E monic
/// of degree e and Eisenstein at p (the uniformizer is the class of y).
struct FieldDescription {
    std::int64_t p = 0;
    int f = 1;
    int e = 1;
    IntPoly unramified_minpoly;
    IntPoly eisenstein_minpoly;

    friend bool operator==(const FieldDescription&, const FieldDescription&) = default;
};

class FieldElement;

class NumberField {
public:
    NumberField() = default;

    /// Validates and builds a model. Omitted polynomials default to the
    /// lexicographically smallest irreducible u and to E = y^e - p.
    static NumberField make(std::int64_t p, int f, int e, std::optional<IntPoly> unramified = std::nullopt,
                            std::optional<IntPoly> eisenstein = std::nullopt) {
        if (!is_prime(p)) throw InvalidInput("p is not prime: " + std::to_string(p));
        if (f < 1 || e < 1) throw InvalidInput("residue and ramification degrees must be positive");
        FieldDescription d;
        d.p = p;
        d.f = f;
        d.e = e;
        d.unramified_minpoly = unramified ? *unramified : fp_poly::default_irreducible(p, f);
        if (eisenstein) {
            d.eisenstein_minpoly = *eisenstein;
        } else {
            d.eisenstein_minpoly.assign(static_cast<std::size_t>(e) + 1, 0);
            d.eisenstein_minpoly[0] = -p;
            d.eisenstein_minpoly[static_cast<std::size_t>(e)] = 1;
        }
        return make(d);
    }

    static NumberField make(const FieldDescription& d) {
        if (!is_prime(d.p)) throw InvalidInput("p is not prime: " + std::to_string(d.p));
        const auto& u = d.unramified_minpoly;
        if (static_cast<int>(u.size()) != d.f + 1 || u.back() != 1)
            throw InvalidInput("unramified polynomial must be monic of degree f");
        if (!fp_poly::is_irreducible(u, d.p)) throw InvalidInput("unramified polynomial is reducible mod p");
        const auto& E = d.eisenstein_minpoly;
        if (static_cast<int>(E.size()) != d.e + 1 || E.back() != 1)
            throw InvalidInput("Eisenstein polynomial must be monic of degree e");
        for (int k = 0; k < d.e; ++k)
            if (E[static_cast<std::size_t>(k)] % d.p != 0)
                throw InvalidInput("polynomial is not Eisenstein: a lower coefficient is a p-adic unit");
        if ((E[0] / d.p) % d.p == 0) throw InvalidInput("polynomial is not Eisenstein: constant term divisible by p^2");
        auto impl = std::make_shared<Impl>();
        impl->desc = d;
        impl->q = checked_pow(d.p, d.f);
        impl->residue = FiniteField::make(d.p, d.f, u);
        NumberField k;
        k.impl_ = std::move(impl);
        return k;
    }

    std::int64_t p() const { return impl_->desc.p; }
    int f() const { return impl_->desc.f; }
    int e() const { return impl_->desc.e; }
    /// Residue cardinality p^f.
    std::int64_t q() const { return impl_->q; }
    int degree() const { return impl_->desc.e * impl_->desc.f; }
    const FieldDescription& description() const { return impl_->desc; }
    const FiniteField& residue_field() const { return impl_->residue; }
    bool valid() const { return static_cast<bool>(impl_); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rational& r) const;
    FieldElement from_integer(std::int64_t n) const;
    FieldElement uniformizer() const;
    /// Class of x, the generator of the unramified part.
    FieldElement unramified_generator() const;

    friend bool operator==(const NumberField& a, const NumberField& b) {
        if (a.impl_ == b.impl_) return true;
        if (!a.impl_ || !b.impl_) return false;
        return a.impl_->desc == b.impl_->desc;
    }

    std::string label() const {
        return "p=" + std::to_string(p()) + ",f=" + std::to_string(f()) + ",e=" + std::to_string(e());
    }

private:
    struct Impl {
        FieldDescription desc;
        std::int64_t q = 0;
        FiniteField residue;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Element of a NumberField, stored by rational coordinates in the basis
/// zeta^a pi^b (0 <= a < f, 0 <= b < e), index a + f*b.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(NumberField field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
        if (c_.size() != static_cast<std::size_t>(field_.degree()))
            throw InvalidInput("coordinate vector has the wrong length");
    }

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coordinates() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        std::vector<Rational> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return {a.field_, std::move(r)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        std::vector<Rational> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
        return {a.field_, std::move(r)};
    }
    FieldElement operator-() const {
        std::vector<Rational> r(c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
        return {field_, std::move(r)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        if (a.c_.size() == 1) return {a.field_, {a.c_[0] * b.c_[0]}};
        return {a.field_, multiply(a.field_.description(), a.c_, b.c_)};
    }
    friend FieldElement operator*(const FieldElement& a, const Rational& r) {
        std::vector<Rational> out(a.c_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] * r;
        return {a.field_, std::move(out)};
    }
    friend FieldElement operator*(const Rational& r, const FieldElement& a) { return a * r; }
    FieldElement& operator+=(const FieldElement& o) {
        check_same(*this, o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) {
        check_same(*this, o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    FieldElement inverse() const;
    FieldElement pow(const Integer& n) const;
    FieldElement pow(std::int64_t n) const { return pow(Integer(static_cast<long>(n))); }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    /// Normalized so that valuation(pi) = 1; nullopt for zero.
    std::optional<std::int64_t> valuation() const {
        const auto& d = field_.description();
        std::optional<std::int64_t> best;
        for (int b = 0; b < d.e; ++b) {
            for (int a = 0; a < d.f; ++a) {
                const Rational& x = c_[static_cast<std::size_t>(a + d.f * b)];
                if (x == 0) continue;
                const std::int64_t v = d.e * *padic_valuation(x, d.p) + b;
                if (!best || v < *best) best = v;
            }
        }
        return best;
    }
    bool is_integral() const {
        auto v = valuation();
        return !v || *v >= 0;
    }

    /// Reduction to the residue field F_q; requires valuation >= 0.
    FiniteFieldElement residue() const {
        if (!is_integral()) throw InvalidInput("residue of an element of negative valuation");
        const auto& d = field_.description();
        fp_poly::Poly c(static_cast<std::size_t>(d.f), 0);
        for (int a = 0; a < d.f; ++a) c[static_cast<std::size_t>(a)] = reduce_mod(c_[static_cast<std::size_t>(a)], d.p);
        return {field_.residue_field(), std::move(c)};
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].get_str();
        return s + "]";
    }

private:
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (!(a.field_ == b.field_)) throw InvalidInput("field elements from different models");
    }

    static std::vector<Rational> multiply(const FieldDescription& d, const std::vector<Rational>& x,
                                          const std::vector<Rational>& y) {
        const int f = d.f, e = d.e;
        const int W = 2 * f - 1, H = 2 * e - 1;
        std::vector<Rational> P(static_cast<std::size_t>(W * H));
        for (int b1 = 0; b1 < e; ++b1)
            for (int a1 = 0; a1 < f; ++a1) {
                const Rational& u = x[static_cast<std::size_t>(a1 + f * b1)];
                if (u == 0) continue;
                for (int b2 = 0; b2 < e; ++b2)
                    for (int a2 = 0; a2 < f; ++a2) {
                        const Rational& v = y[static_cast<std::size_t>(a2 + f * b2)];
                        if (v == 0) continue;
                        P[static_cast<std::size_t>((a1 + a2) + W * (b1 + b2))] += u * v;
                    }
            }
        // y^e = -sum_{k<e} E_k y^k
        for (int b = H - 1; b >= e; --b)
            for (int a = 0; a < W; ++a) {
                Rational& top = P[static_cast<std::size_t>(a + W * b)];
                if (top == 0) continue;
                for (int k = 0; k < e; ++k) {
                    const std::int64_t Ek = d.eisenstein_minpoly[static_cast<std::size_t>(k)];
                    if (Ek != 0) P[static_cast<std::size_t>(a + W * (b - e + k))] -= top * static_cast<long>(Ek);
                }
                top = 0;
            }
        // x^f = -sum_{k<f} u_k x^k
        for (int b = 0; b < e; ++b)
            for (int a = W - 1; a >= f; --a) {
                Rational& top = P[static_cast<std::size_t>(a + W * b)];
                if (top == 0) continue;
                for (int k = 0; k < f; ++k) {
                    const std::int64_t uk = d.unramified_minpoly[static_cast<std::size_t>(k)];
                    if (uk != 0) P[static_cast<std::size_t>(a - f + k + W * b)] -= top * static_cast<long>(uk);
                }
                top = 0;
            }
        std::vector<Rational> out(static_cast<std::size_t>(f * e));
        for (int b = 0; b < e; ++b)
            for (int a = 0; a < f; ++a) out[static_cast<std::size_t>(a + f * b)] = std::move(P[static_cast<std::size_t>(a + W * b)]);
        return out;
    }

    NumberField field_;
    std::vector<Rational> c_;
};

inline FieldElement NumberField::zero() const {
    return {*this, std::vector<Rational>(static_cast<std::size_t>(degree()))};
}
inline FieldElement NumberField::from_rational(const Rational& r) const {
    std::vector<Rational> c(static_cast<std::size_t>(degree()));
    c[0] = r;
    return {*this, std::move(c)};
}
inline FieldElement NumberField::one() const { return from_rational(1); }
inline FieldElement NumberField::from_integer(std::int64_t n) const { return from_rational(Rational(static_cast<long>(n))); }
inline FieldElement NumberField::uniformizer() const {
    if (e() == 1) return from_rational(Rational(static_cast<long>(-description().eisenstein_minpoly[0])));
    std::vector<Rational> c(static_cast<std::size_t>(degree()));
    c[static_cast<std::size_t>(f())] = 1;
    return {*this, std::move(c)};
}
inline FieldElement NumberField::unramified_generator() const {
    if (f() == 1) return from_rational(Rational(static_cast<long>(-description().unramified_minpoly[0])));
    std::vector<Rational> c(static_cast<std::size_t>(degree()));
    c[1] = 1;
    return {*this, std::move(c)};
}

inline FieldElement FieldElement::pow(const Integer& n) const {
    if (n < 0) return inverse().pow(Integer(-n));
    if (c_.size() == 1) {
        if (!n.fits_ulong_p()) throw InvalidInput("exponent too large");
        Rational r;
        mpz_pow_ui(r.get_num_mpz_t(), c_[0].get_num_mpz_t(), n.get_ui());
        mpz_pow_ui(r.get_den_mpz_t(), c_[0].get_den_mpz_t(), n.get_ui());
        return {field_, {r}};
    }
    FieldElement result = field_.one(), base = *this;
    Integer rest = n;
    while (rest > 0) {
        if (mpz_odd_p(rest.get_mpz_t())) result *= base;
        rest >>= 1;
        if (rest > 0) base *= base;
    }
    return result;
}

inline FieldElement FieldElement::inverse() const {
    if (is_zero()) throw InvalidInput("inverse of zero");
    const std::size_t d = c_.size();
    if (d == 1) return {field_, {1 / c_[0]}};
    // Solve (multiplication-by-this) * y = 1 by Gaussian elimination.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> basis(d);
        basis[j] = 1;
        FieldElement col = *this * FieldElement(field_, std::move(basis));
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) throw MathAssertion("singular multiplication matrix: model is not a field");
        std::swap(m[piv], m[col]);
        const Rational lead = m[col][col];
        for (std::size_t k = col; k <= d; ++k) m[col][k] /= lead;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == col || m[i][col] == 0) continue;
            const Rational factor = m[i][col];
            for (std::size_t k = col; k <= d; ++k) m[i][k] -= factor * m[col][k];
        }
    }
    std::vector<Rational> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
    return {field_, std::move(y)};
}

/// Injective ring map from a subfield model into an extension model:
/// zeta goes to a root of the subfield's unramified polynomial, pi to pi^r.
class FieldEmbedding {
public:
    FieldEmbedding() = default;

    static FieldEmbedding make(const NumberField& from, const NumberField& to) {
        if (from.p() != to.p()) throw InvalidInput("fields have different residue characteristic");
        if (to.f() % from.f() != 0 || to.e() % from.e() != 0)
            throw InvalidInput("ramification and residue degrees of the subfield must divide those of the extension");
        FieldEmbedding emb;
        emb.from_ = from;
        emb.to_ = to;
        if (from.f() == 1) {
            emb.zeta_ = to.from_rational(Rational(static_cast<long>(-from.description().unramified_minpoly[0])));
        } else if (from.description().unramified_minpoly == to.description().unramified_minpoly) {
            emb.zeta_ = to.unramified_generator();
        } else {
            throw InvalidInput("no exact embedding of the unramified part between these models");
        }
        if (from.e() == 1) {
            emb.pi_ = to.from_rational(Rational(static_cast<long>(-from.description().eisenstein_minpoly[0])));
        } else {
            const int r = to.e() / from.e();
            const auto& Ef = from.description().eisenstein_minpoly;
            IntPoly expected(static_cast<std::size_t>(to.e()) + 1, 0);
            for (std::size_t k = 0; k < Ef.size(); ++k) expected[k * static_cast<std::size_t>(r)] = Ef[k];
            if (expected != to.description().eisenstein_minpoly)
                throw InvalidInput("no exact embedding of the ramified part: E_L(y) != E_K(y^r)");
            emb.pi_ = to.uniformizer().pow(std::int64_t{r});
        }
        return emb;
    }

    const NumberField& source() const { return from_; }
    const NumberField& target() const { return to_; }

    FieldElement operator()(const FieldElement& x) const {
        if (!(x.field() == from_)) throw InvalidInput("embedding applied to an element of another field");
        const int f = from_.f(), e = from_.e();
        FieldElement out = to_.zero();
        FieldElement pi_power = to_.one();
        for (int b = 0; b < e; ++b) {
            FieldElement zeta_power = to_.one();
            for (int a = 0; a < f; ++a) {
                const Rational& c = x.coordinates()[static_cast<std::size_t>(a + f * b)];
                if (c != 0) out += zeta_power * pi_power * c;
                zeta_power *= zeta_;
            }
            pi_power *= pi_;
        }
        return out;
    }

private:
    NumberField from_, to_;
    FieldElement zeta_, pi_;
};

/// Searches small-coordinate elements of the unramified part for a primitive
/// root of unity of the given order; the model may not contain one exactly.
inline std::optional<FieldElement> find_primitive_root_of_unity(const NumberField& K, std::int64_t order) {
    const int f = K.f();
    const auto primes = detail::prime_factors(Integer(static_cast<long>(order)));
    const int span = 5;  // coordinates drawn from {-2..2}
    std::int64_t count = 1;
    for (int i = 0; i < f; ++i) count *= span;
    for (std::int64_t code = 0; code < count; ++code) {
        std::vector<Rational> c(static_cast<std::size_t>(K.degree()));
        std::int64_t rest = code;
        bool nonzero = false;
        for (int a = f - 1; a >= 0; --a) {
            const std::int64_t digit = rest % span - 2;
            rest /= span;
            c[static_cast<std::size_t>(a)] = Rational(static_cast<long>(digit));
            nonzero = nonzero || digit != 0;
        }
        if (!nonzero) continue;
        FieldElement z(K, std::move(c));
        if (!(z.pow(order) == K.one())) continue;
        bool primitive = true;
        for (const Integer& r : primes)
            if (z.pow(Integer(Integer(static_cast<long>(order)) / r)) == K.one()) primitive = false;
        if (primitive) return z;
    }
    return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const FieldElement& z) { return os << z.to_string(); }

}  // namespace fmlab
