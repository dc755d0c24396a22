#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fmlab/rational.hpp"

namespace fmlab {

/// Dense polynomials over the prime field F_p, coefficients low-to-high.
namespace fp_poly {

using Poly = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr != 0) {
        std::int64_t qt = r / nr;
        t = std::exchange(nt, t - qt * nt);
        r = std::exchange(nr, r - qt * nr);
    }
    if (r != 1) throw InvalidInput("element not invertible mod p");
    return mod(t, p);
}

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly reduce(Poly a, std::int64_t p) {
    for (auto& c : a) c = mod(c, p);
    trim(a);
    return a;
}

inline Poly sub(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], p);
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    trim(r);
    return r;
}

/// Remainder of a modulo a nonzero b.
inline Poly rem(Poly a, const Poly& b, std::int64_t p) {
    trim(a);
    const std::int64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::int64_t factor = mod(a.back() * lead_inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - factor * b[i], p);
        trim(a);
    }
    return a;
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
    Poly result{1};
    base = rem(base, m, p);
    while (e > 0) {
        if (e & 1U) result = rem(mul(result, base, p), m, p);
        base = rem(mul(base, base, p), m, p);
        e >>= 1U;
    }
    return result;
}

/// Rabin-style test: a monic g of degree n is irreducible iff it shares no
/// factor with x^{p^d} - x for every d <= n/2.
inline bool is_irreducible(const Poly& g_in, std::int64_t p) {
    Poly g = reduce(g_in, p);
    if (g.size() < 2) return false;
    const std::size_t n = g.size() - 1;
    if (n == 1) return true;
    Poly x{0, 1};
    Poly power = x;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        power = powmod(power, static_cast<std::uint64_t>(p), g, p);
        Poly common = gcd(g, sub(power, x, p), p);
        if (common.size() > 1) return false;
    }
    return true;
}

/// Lexicographically smallest monic irreducible polynomial of degree n with
/// coefficients in {0..p-1}, comparing c_{n-1}, c_{n-2}, ..., c_0 in turn.
inline Poly default_irreducible(std::int64_t p, int n) {
    if (n < 1) throw InvalidInput("degree must be positive");
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(static_cast<std::size_t>(n) + 1, 0);
        g[static_cast<std::size_t>(n)] = 1;
        std::uint64_t rest = code;
        // least significant digit is c_0, so the enumeration is ordered by c_{n-1} first
        for (int i = 0; i < n; ++i) {
            g[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p));
            rest /= static_cast<std::uint64_t>(p);
        }
        if (is_irreducible(g, p)) return g;
    }
    throw InvalidInput("no irreducible polynomial found");
}

}  // namespace fp_poly

/// The finite field F_{p^n} = F_p[x]/(g).
class FiniteField {
public:
    struct Impl {
        std::int64_t p;
        int n;
        fp_poly::Poly modulus;  // monic, degree n
        Integer size;
    };

    FiniteField() = default;

    static FiniteField make(std::int64_t p, int n, std::optional<fp_poly::Poly> modulus = std::nullopt) {
        if (!is_prime(p)) throw InvalidInput("characteristic must be prime: " + std::to_string(p));
        fp_poly::Poly g = modulus ? fp_poly::reduce(*modulus, p) : fp_poly::default_irreducible(p, n);
        if (static_cast<int>(g.size()) != n + 1 || g.back() != 1)
            throw InvalidInput("finite field modulus must be monic of degree " + std::to_string(n));
        if (!fp_poly::is_irreducible(g, p)) throw InvalidInput("finite field modulus is reducible mod p");
        auto impl = std::make_shared<Impl>(Impl{p, n, std::move(g), ipow(p, static_cast<std::uint64_t>(n))});
        FiniteField f;
        f.impl_ = std::move(impl);
        return f;
    }

    std::int64_t characteristic() const { return impl_->p; }
    int degree() const { return impl_->n; }
    const fp_poly::Poly& modulus() const { return impl_->modulus; }
    const Integer& size() const { return impl_->size; }
    bool valid() const { return static_cast<bool>(impl_); }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        if (a.impl_ == b.impl_) return true;
        if (!a.impl_ || !b.impl_) return false;
        return a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus;
    }

private:
    std::shared_ptr<const Impl> impl_;
};

/// Element of a FiniteField stored by its coordinate vector in 1, x, ..., x^{n-1}.
class FiniteFieldElement {
public:
    FiniteFieldElement() = default;
    FiniteFieldElement(FiniteField field, fp_poly::Poly coords) : field_(std::move(field)), c_(std::move(coords)) {
        normalize();
    }

    static FiniteFieldElement zero(const FiniteField& f) { return {f, {}}; }
    static FiniteFieldElement one(const FiniteField& f) { return {f, {1}}; }
    static FiniteFieldElement from_int(const FiniteField& f, std::int64_t a) { return {f, {a}}; }
    static FiniteFieldElement generator(const FiniteField& f) { return {f, {0, 1}}; }

    const FiniteField& field() const { return field_; }

    /// Dense coordinates of length n.
    std::vector<std::int64_t> coordinates() const {
        std::vector<std::int64_t> out(static_cast<std::size_t>(field_.degree()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
        return out;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    friend FiniteFieldElement operator+(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check_same(a, b);
        const std::int64_t p = a.field_.characteristic();
        fp_poly::Poly r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = fp_poly::mod(r[i] + b.c_[i], p);
        return {a.field_, std::move(r)};
    }
    friend FiniteFieldElement operator-(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check_same(a, b);
        return {a.field_, fp_poly::sub(a.c_, b.c_, a.field_.characteristic())};
    }
    FiniteFieldElement operator-() const { return zero(field_) - *this; }
    friend FiniteFieldElement operator*(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check_same(a, b);
        const std::int64_t p = a.field_.characteristic();
        return {a.field_, fp_poly::rem(fp_poly::mul(a.c_, b.c_, p), a.field_.modulus(), p)};
    }
    FiniteFieldElement& operator+=(const FiniteFieldElement& o) { return *this = *this + o; }
    FiniteFieldElement& operator-=(const FiniteFieldElement& o) { return *this = *this - o; }
    FiniteFieldElement& operator*=(const FiniteFieldElement& o) { return *this = *this * o; }
    friend FiniteFieldElement operator*(const FiniteFieldElement& a, std::int64_t k) {
        return a * from_int(a.field_, k);
    }

    FiniteFieldElement pow(const Integer& e) const {
        if (e < 0) return inverse().pow(-e);
        FiniteFieldElement result = one(field_), base = *this;
        Integer rest = e;
        while (rest > 0) {
            if (mpz_odd_p(rest.get_mpz_t())) result *= base;
            base *= base;
            rest >>= 1;
        }
        return result;
    }
    FiniteFieldElement pow(std::uint64_t e) const { return pow(Integer(static_cast<unsigned long>(e))); }

    FiniteFieldElement inverse() const {
        if (is_zero()) throw InvalidInput("inverse of zero in a finite field");
        return pow(Integer(field_.size() - 2));
    }

    /// x -> x^{p^k}
    FiniteFieldElement frobenius(int k = 1) const {
        return pow(ipow(field_.characteristic(), static_cast<std::uint64_t>(k)));
    }

    /// Multiplicative order of a nonzero element.
    Integer multiplicative_order() const;

    friend bool operator==(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    /// Lexicographic order on dense coordinate vectors, constant coordinate first.
    friend bool lex_less(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        return a.coordinates() < b.coordinates();
    }

    std::string to_string() const {
        std::string s = "[";
        auto co = coordinates();
        for (std::size_t i = 0; i < co.size(); ++i) s += (i ? "," : "") + std::to_string(co[i]);
        return s + "]";
    }

private:
    static void check_same(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        if (!(a.field_ == b.field_)) throw InvalidInput("finite field elements from different fields");
    }
    void normalize() { c_ = fp_poly::rem(fp_poly::reduce(std::move(c_), field_.characteristic()), field_.modulus(), field_.characteristic()); }

    FiniteField field_;
    fp_poly::Poly c_;
};

namespace detail {
inline std::vector<Integer> prime_factors(Integer n) {
    std::vector<Integer> out;
    for (Integer d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}
}  // namespace detail

inline Integer FiniteFieldElement::multiplicative_order() const {
    if (is_zero()) throw InvalidInput("zero has no multiplicative order");
    Integer order = field_.size() - 1;
    for (const Integer& r : detail::prime_factors(order)) {
        while (order % r == 0 && pow(Integer(order / r)).is_one()) order /= r;
    }
    return order;
}

/// Calls fn on every element of a (small) field, in lexicographic order of
/// coordinate vectors (constant coordinate most significant).
template <class Fn>
void for_each_element(const FiniteField& f, Fn&& fn) {
    if (f.size() > (1 << 24)) throw InvalidInput("finite field too large to enumerate");
    const std::uint64_t count = f.size().get_ui();
    const int n = f.degree();
    const auto p = static_cast<std::uint64_t>(f.characteristic());
    for (std::uint64_t code = 0; code < count; ++code) {
        fp_poly::Poly c(static_cast<std::size_t>(n), 0);
        std::uint64_t rest = code;
        for (int i = n - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rest % p);
            rest /= p;
        }
        fn(FiniteFieldElement(f, std::move(c)));
    }
}

/// Returns c with c^m == target of maximal multiplicative order among all
/// m-th roots of target; ties broken by the lexicographically smallest
/// coordinate vector.
inline FiniteFieldElement primitive_root_of(const FiniteFieldElement& target, const Integer& m) {
    if (target.is_zero()) throw InvalidInput("primitive_root_of: target must be nonzero");
    if (m <= 0) throw InvalidInput("primitive_root_of: order must be positive");
    std::optional<FiniteFieldElement> best;
    Integer best_order = 0;
    for_each_element(target.field(), [&](const FiniteFieldElement& c) {
        if (c.is_zero() || !(c.pow(m) == target)) return;
        Integer ord = c.multiplicative_order();
        if (ord > best_order) {
            best_order = ord;
            best = c;
        }
    });
    if (!best) throw InvalidInput("no m-th root of the target exists in this field");
    return *best;
}

/// A field embedding F_{p^k} -> F_{p^n}, determined by the image of the generator.
class FiniteFieldEmbedding {
public:
    FiniteFieldEmbedding() = default;

    /// Chooses the lexicographically smallest root of the source modulus in the target.
    static FiniteFieldEmbedding make(const FiniteField& from, const FiniteField& to) {
        if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
            throw InvalidInput("no embedding between these finite fields");
        std::optional<FiniteFieldElement> root;
        const auto& g = from.modulus();
        for_each_element(to, [&](const FiniteFieldElement& x) {
            if (root) return;
            FiniteFieldElement acc = FiniteFieldElement::zero(to);
            for (std::size_t i = g.size(); i-- > 0;) acc = acc * x + FiniteFieldElement::from_int(to, g[i]);
            if (acc.is_zero()) root = x;
        });
        if (!root) throw MathAssertion("subfield modulus has no root in the extension");
        FiniteFieldEmbedding e;
        e.from_ = from;
        e.to_ = to;
        e.image_ = *root;
        return e;
    }

    FiniteFieldElement operator()(const FiniteFieldElement& a) const {
        if (!(a.field() == from_)) throw InvalidInput("embedding applied to an element of the wrong field");
        FiniteFieldElement acc = FiniteFieldElement::zero(to_);
        auto c = a.coordinates();
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * image_ + FiniteFieldElement::from_int(to_, c[i]);
        return acc;
    }

    const FiniteField& source() const { return from_; }
    const FiniteField& target() const { return to_; }

private:
    FiniteField from_, to_;
    FiniteFieldElement image_;
};

inline std::ostream& operator<<(std::ostream& os, const FiniteFieldElement& z) { return os << z.to_string(); }

}  // namespace fmlab
