#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace fmlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Precondition or configuration failure (CLI exit code 1).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical consistency check failed: integrality, a congruence,
/// a closed form that should hold (CLI exit code 2).
class MathAssertion : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline Integer ipow(std::int64_t base, std::uint64_t exponent) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base),
                  static_cast<unsigned long>(exponent));
    if (base < 0 && (exponent & 1U)) r = -r;
    return r;
}

/// q^k as a machine integer; throws when it does not fit in 62 bits.
inline std::int64_t checked_pow(std::int64_t q, std::int64_t k) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        if (r > (std::numeric_limits<std::int64_t>::max() >> 2) / q)
            throw InvalidInput("exponent q^k overflows: q=" + std::to_string(q) +
                               " k=" + std::to_string(k));
        r *= q;
    }
    return r;
}

/// p-adic valuation of a nonzero integer.
inline std::int64_t padic_valuation(const Integer& n, std::int64_t p) {
    if (n == 0) return std::numeric_limits<std::int64_t>::max();
    Integer rest;
    Integer prime(static_cast<unsigned long>(p));
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

/// p-adic valuation of a rational; nullopt for zero.
inline std::optional<std::int64_t> padic_valuation(const Rational& x, std::int64_t p) {
    if (x == 0) return std::nullopt;
    return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

/// x mod p for a rational with p-integral denominator.
inline std::int64_t reduce_mod(const Rational& x, std::int64_t p) {
    Integer mod(static_cast<unsigned long>(p));
    Integer den = x.get_den();
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw MathAssertion("reduction of a rational with p in the denominator");
    Integer r = (x.get_num() * inv) % mod;
    if (r < 0) r += mod;
    return r.get_si();
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw InvalidInput("not a rational number: '" + s + "'");
    r.canonicalize();
    return r;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace fmlab
