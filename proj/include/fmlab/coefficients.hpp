#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "fmlab/finite_field.hpp"
#include "fmlab/number_field.hpp"
#include "fmlab/pi_fraction.hpp"
#include "fmlab/rational.hpp"

namespace fmlab {

// Uniform access to the coefficient types used by GradedPoly and
// TruncatedSeries.

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const FieldElement& c) { return c.is_zero(); }
inline bool coeff_is_zero(const FiniteFieldElement& c) { return c.is_zero(); }
inline bool coeff_is_zero(const PiFraction& c) { return c.is_zero(); }

inline Rational one_like(const Rational&) { return 1; }
inline FieldElement one_like(const FieldElement& c) { return c.field().one(); }
inline FiniteFieldElement one_like(const FiniteFieldElement& c) { return FiniteFieldElement::one(c.field()); }
inline PiFraction one_like(const PiFraction&) { return PiFraction::one(); }

inline Rational zero_like(const Rational&) { return 0; }
inline FieldElement zero_like(const FieldElement& c) { return c.field().zero(); }
inline FiniteFieldElement zero_like(const FiniteFieldElement& c) { return FiniteFieldElement::zero(c.field()); }
inline PiFraction zero_like(const PiFraction&) { return PiFraction(); }

inline Rational coeff_pow(const Rational& c, std::int64_t n) {
    Rational r;
    if (n < 0) return coeff_pow(Rational(1 / c), -n);
    mpz_pow_ui(r.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(r.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(n));
    return r;
}
inline FieldElement coeff_pow(const FieldElement& c, std::int64_t n) { return c.pow(n); }
inline FiniteFieldElement coeff_pow(const FiniteFieldElement& c, std::int64_t n) {
    if (n < 0) return c.inverse().pow(static_cast<std::uint64_t>(-n));
    return c.pow(static_cast<std::uint64_t>(n));
}
inline PiFraction coeff_pow(const PiFraction& c, std::int64_t n) { return c.pow(n); }

/// Characteristic of the coefficient ring: p for finite fields, 0 otherwise.
inline std::int64_t coeff_characteristic(const FiniteFieldElement& c) { return c.field().characteristic(); }
template <class C>
std::int64_t coeff_characteristic(const C&) {
    return 0;
}

/// Coefficient arithmetic over a model K with its actual uniformizer.
/// The distinguished pi may be replaced (e.g. by the image of a smaller
/// field's uniformizer) together with its residue cardinality q.
class ModelContext {
public:
    using Coeff = FieldElement;

    explicit ModelContext(NumberField K) : K_(K), pi_(K.uniformizer()), q_(K.q()) { init_fast_path(); }
    ModelContext(NumberField K, FieldElement pi, std::int64_t q) : K_(K), pi_(std::move(pi)), q_(q) {
        init_fast_path();
    }

    const NumberField& field() const { return K_; }
    std::int64_t q() const { return q_; }
    FieldElement zero() const { return K_.zero(); }
    FieldElement one() const { return K_.one(); }
    FieldElement from_rational(const Rational& r) const { return K_.from_rational(r); }
    FieldElement pi() const { return pi_; }

    /// pi^n; a uniformizer with minimal polynomial y^e - c is raised as c^{n div e} pi^{n mod e}.
    FieldElement pi_power(std::int64_t n) const {
        if (n < 0) return pi_power(-n).inverse();
        if (binomial_) {
            const std::int64_t e = K_.e();
            Rational c = coeff_pow(binomial_constant_, n / e);
            return K_.uniformizer().pow(n % e) * c;
        }
        if (pi_.is_rational()) return K_.from_rational(coeff_pow(pi_.coordinates()[0], n));
        return pi_.pow(n);
    }
    FieldElement inverse(const FieldElement& x) const { return x.inverse(); }

    std::optional<std::int64_t> valuation(const FieldElement& x) const { return x.valuation(); }
    FiniteFieldElement residue(const FieldElement& x) const { return x.residue(); }

    /// Rough bit size of pi^n, used to decide whether this route is affordable.
    double bits_of_pi_power(std::int64_t n) const {
        return static_cast<double>(n) / static_cast<double>(K_.e()) * std::log2(static_cast<double>(K_.p()) + 1.0);
    }

private:
    void init_fast_path() {
        // pi is the model uniformizer and E(y) = y^e - c.
        const auto& E = K_.description().eisenstein_minpoly;
        bool binomial = pi_ == K_.uniformizer();
        for (std::size_t k = 1; k + 1 < E.size(); ++k) binomial = binomial && E[k] == 0;
        binomial_ = binomial;
        if (binomial_) binomial_constant_ = Rational(static_cast<long>(-E[0]));
    }

    NumberField K_;
    FieldElement pi_;
    std::int64_t q_;
    bool binomial_ = false;
    Rational binomial_constant_;
};

/// Coefficient arithmetic in Q(t) with pi = t^r. Valuations and residues are
/// read in the model K with t the uniformizer of K. With a precision set,
/// every constant is a truncated class modulo pi_K^precision.
class SymbolicContext {
public:
    using Coeff = PiFraction;

    SymbolicContext(NumberField K, std::int64_t q, std::int64_t r = 1,
                    std::optional<std::int64_t> precision = std::nullopt)
        : K_(K), q_(q), r_(r), precision_(precision) {
        if (r < 1) throw InvalidInput("uniformizer exponent must be positive");
    }
    explicit SymbolicContext(NumberField K) : SymbolicContext(K, K.q()) {}

    const NumberField& field() const { return K_; }
    std::int64_t q() const { return q_; }
    std::int64_t uniformizer_exponent() const { return r_; }
    std::optional<std::int64_t> precision() const { return precision_; }

    PiFraction zero() const { return PiFraction(); }
    PiFraction one() const { return PiFraction::one(); }
    PiFraction from_rational(const Rational& r) const { return lift(PiFraction::from_rational(r)); }
    PiFraction pi() const { return lift(PiFraction::t_power(r_)); }
    PiFraction pi_power(std::int64_t n) const { return lift(PiFraction::t_power(r_ * n)); }
    PiFraction inverse(const PiFraction& x) const { return x.inverse(); }

    std::optional<std::int64_t> valuation(const PiFraction& x) const { return x.valuation(K_); }
    FiniteFieldElement residue(const PiFraction& x) const { return x.residue(K_); }

    PiFraction lift(const PiFraction& x) const {
        return precision_ ? x.truncated(K_.p(), K_.e(), *precision_) : x;
    }

private:
    NumberField K_;
    std::int64_t q_;
    std::int64_t r_;
    std::optional<std::int64_t> precision_;
};

}  // namespace fmlab
