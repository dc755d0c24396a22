#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "fmlab/number_field.hpp"
#include "fmlab/rational.hpp"

namespace fmlab {

/// Element of Q(t), t standing for a uniformizer, kept in the factored form
///
///     t^shift * num(t) / prod_d (1 - t^d)^{den[d]}
///
/// with num sparse and num(0) != 0. Every quantity built from pi by the
/// generator calculus has this shape, and huge exponents such as pi^{q^h}
/// cost one map entry.
///
/// A value may also be a truncated class: the true value is known only up to
/// an error of valuation >= prec in a model with residue characteristic p and
/// ramification e, where v(c t^k) = e v_p(c) + k. Terms at or above prec are
/// dropped. The denominators are units, so they never affect valuations.
class PiFraction {
public:
    using Poly = std::map<std::int64_t, Rational>;
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

    PiFraction() = default;

    static PiFraction from_rational(const Rational& r) {
        PiFraction x;
        if (r != 0) x.num_[0] = r;
        return x;
    }
    static PiFraction one() { return from_rational(1); }
    static PiFraction t_power(std::int64_t k) {
        PiFraction x;
        x.num_[0] = 1;
        x.shift_ = k;
        return x;
    }
    /// 1 - t^d for d > 0.
    static PiFraction one_minus_t_power(std::int64_t d) {
        if (d <= 0) throw InvalidInput("one_minus_t_power needs d > 0");
        PiFraction x;
        x.num_[0] = 1;
        x.num_[d] = -1;
        return x;
    }
    /// Builds t^shift num / prod (1 - t^d)^k from explicit parts.
    static PiFraction from_parts(std::int64_t shift, Poly num, std::map<std::int64_t, int> den) {
        PiFraction x;
        x.shift_ = shift;
        x.num_ = std::move(num);
        for (auto& [d, k] : den)
            if (d <= 0 || k < 0) throw InvalidInput("denominator factors need d > 0 and multiplicity >= 0");
        x.den_ = std::move(den);
        x.normalize();
        return x;
    }

    /// The same value reduced modulo pi^prec in a model with the given p, e.
    PiFraction truncated(std::int64_t p, int e, std::int64_t prec) const {
        if (is_truncated() && (p_ != p || e_ != e)) throw InvalidInput("truncation parameters disagree");
        PiFraction x = *this;
        x.p_ = p;
        x.e_ = e;
        x.prec_ = std::min(prec_, prec);
        x.normalize();
        return x;
    }

    bool is_truncated() const { return prec_ != kExact; }
    std::int64_t precision() const { return prec_; }
    std::int64_t shift() const { return shift_; }
    const Poly& numerator() const { return num_; }
    const std::map<std::int64_t, int>& denominator() const { return den_; }

    /// Exactly zero; a truncated class is never exactly zero.
    bool is_zero() const { return num_.empty() && !is_truncated(); }
    /// Zero to the known precision.
    bool is_negligible() const { return num_.empty(); }
    bool is_one() const { return !is_truncated() && shift_ == 0 && den_.empty() && num_.size() == 1 && num_.begin()->second == 1; }

    friend PiFraction operator+(const PiFraction& a, const PiFraction& b) { return combine(a, b, 1); }
    friend PiFraction operator-(const PiFraction& a, const PiFraction& b) { return combine(a, b, -1); }
    PiFraction operator-() const {
        PiFraction x = *this;
        for (auto& [k, c] : x.num_) c = -c;
        return x;
    }
    PiFraction& operator+=(const PiFraction& o) { return *this = *this + o; }
    PiFraction& operator-=(const PiFraction& o) { return *this = *this - o; }
    PiFraction& operator*=(const PiFraction& o) { return *this = *this * o; }

    friend PiFraction operator*(const PiFraction& a, const PiFraction& b) {
        PiFraction r;
        merge_truncation(r, a, b);
        if (r.is_truncated()) r.prec_ = std::min(sat_add(a.lower_bound_with(r.p_, r.e_), b.prec_),
                                                 sat_add(b.lower_bound_with(r.p_, r.e_), a.prec_));
        if (a.num_.empty() || b.num_.empty()) {
            r.normalize();
            return r;
        }
        r.shift_ = a.shift_ + b.shift_;
        r.num_ = poly_mul(a.num_, b.num_);
        r.den_ = a.den_;
        for (auto& [d, k] : b.den_) r.den_[d] += k;
        r.normalize();
        return r;
    }
    friend PiFraction operator*(const PiFraction& a, const Rational& s) {
        PiFraction r = a;
        if (s == 0) {
            r.num_.clear();
            if (r.is_truncated()) r.prec_ = kExact, r.p_ = 0, r.e_ = 0;
            r.normalize();
            return r;
        }
        for (auto& [k, c] : r.num_) c *= s;
        if (r.is_truncated()) r.prec_ = sat_add(r.prec_, static_cast<std::int64_t>(r.e_) * *padic_valuation(s, r.p_));
        r.normalize();
        return r;
    }
    friend PiFraction operator*(const Rational& s, const PiFraction& a) { return a * s; }

    /// Supported when the numerator is c or c (1 - t^D); these cover every
    /// divisor the generator calculus needs (pi and the Pi values).
    PiFraction inverse() const {
        if (num_.empty()) throw InvalidInput("inverse of zero");
        const Rational c = num_.begin()->second;
        PiFraction r;
        std::map<std::int64_t, int> new_den;
        if (num_.size() == 1) {
        } else if (num_.size() == 2 && std::next(num_.begin())->second == -c) {
            new_den[std::next(num_.begin())->first] = 1;
        } else {
            throw InvalidInput("inverse is only available for numerators c or c(1 - t^D)");
        }
        r.num_ = expand_denominator(den_);
        for (auto& [k, x] : r.num_) x /= c;
        r.shift_ = -shift_;
        r.den_ = std::move(new_den);
        if (is_truncated()) {
            const std::int64_t w = lower_bound_with(p_, e_);
            r.p_ = p_;
            r.e_ = e_;
            r.prec_ = prec_ - 2 * w;
        }
        r.normalize();
        return r;
    }

    PiFraction pow(std::int64_t n) const {
        if (n < 0) return inverse().pow(-n);
        if (!is_truncated() && num_.size() == 1 && den_.empty()) {
            PiFraction r;
            Rational c;
            mpz_pow_ui(c.get_num_mpz_t(), num_.begin()->second.get_num_mpz_t(), static_cast<unsigned long>(n));
            mpz_pow_ui(c.get_den_mpz_t(), num_.begin()->second.get_den_mpz_t(), static_cast<unsigned long>(n));
            r.num_[0] = c;
            r.shift_ = shift_ * n;
            return r;
        }
        PiFraction result = one(), base = *this;
        while (n > 0) {
            if (n & 1) result *= base;
            n >>= 1;
            if (n > 0) base *= base;
        }
        return result;
    }

    /// The same rational function with t replaced by t^r, r >= 1.
    PiFraction substitute_power(std::int64_t r) const {
        if (r < 1) throw InvalidInput("substitute_power needs r >= 1");
        if (is_truncated()) throw InvalidInput("substitute_power needs an exact value");
        PiFraction x;
        for (const auto& [k, c] : num_) x.num_.emplace(k * r, c);
        x.shift_ = shift_ * r;
        for (const auto& [d, k] : den_) x.den_.emplace(d * r, k);
        x.normalize();
        return x;
    }

    /// Equal to the known precision.
    friend bool operator==(const PiFraction& a, const PiFraction& b) { return (a - b).is_negligible(); }

    /// Lower bound for the valuation in a model with the given p and e.
    std::int64_t lower_bound_with(std::int64_t p, int e) const {
        if (num_.empty()) return prec_;
        std::int64_t best = kExact;
        for (const auto& [k, c] : num_) best = std::min(best, term_bound(k, c, p, e));
        return best;
    }

    /// Valuation in K with t read as the uniformizer of K; nullopt for zero.
    std::optional<std::int64_t> valuation(const NumberField& K) const {
        if (num_.empty()) {
            if (is_truncated()) throw MathAssertion("valuation of a class known only modulo pi^" + std::to_string(prec_));
            return std::nullopt;
        }
        check_model(K);
        const std::int64_t lb = lower_bound_with(K.p(), K.e());
        std::int64_t top = 0;
        for (const auto& [k, c] : num_) top = std::max(top, term_bound(k, c, K.p(), K.e()));
        std::int64_t bound = is_truncated() ? prec_ : lb + 8;
        for (;;) {
            const FieldElement n = partial_value(K, bound);
            const auto v = n.valuation();
            if (v && *v < bound) return v;
            if (is_truncated()) throw MathAssertion("valuation not determined modulo pi^" + std::to_string(prec_));
            if (bound > top) return v;
            if (bound - lb > (std::int64_t{1} << 20)) throw MathAssertion("valuation not resolved at desk scale");
            bound = lb + 2 * (bound - lb) + 8;
        }
    }

    /// Reduction modulo the maximal ideal of K.
    FiniteFieldElement residue(const NumberField& K) const {
        if (is_truncated() && prec_ < 1) throw MathAssertion("residue needs precision at least pi^1");
        if (num_.empty()) return FiniteFieldElement::zero(K.residue_field());
        const auto v = valuation(K);
        if (v && *v < 0) throw InvalidInput("residue of an element of negative valuation");
        if (!v || *v > 0) return FiniteFieldElement::zero(K.residue_field());
        // The unit denominator reduces to 1 and terms bounded below by 1 vanish.
        return partial_value(K, 1).residue();
    }

    /// Exact value in the model; only for moderate exponents.
    FieldElement evaluate(const NumberField& K) const {
        if (is_truncated()) throw InvalidInput("evaluate needs an exact value");
        check_model(K);
        FieldElement n = K.zero();
        for (const auto& [k, c] : num_) n += pi_power(K, shift_ + k) * c;
        FieldElement d = K.one();
        for (const auto& [deg, mult] : den_) d *= (K.one() - pi_power(K, deg)).pow(std::int64_t{mult});
        return n / d;
    }

    std::string to_string() const {
        if (num_.empty()) return is_truncated() ? "O(pi^" + std::to_string(prec_) + ")" : "0";
        std::string s;
        bool first = true;
        for (const auto& [k, c] : num_) {
            std::string coeff = c.get_str();
            if (!first) s += (c < 0) ? " - " : " + ";
            else if (c < 0) s += "-";
            if (c < 0) coeff = Rational(-c).get_str();
            first = false;
            if (k == 0) s += coeff;
            else s += (coeff == "1" ? "" : coeff + "*") + "t^" + std::to_string(k);
        }
        if (num_.size() > 1) s = "(" + s + ")";
        if (shift_ != 0) s = (s == "1") ? "t^" + std::to_string(shift_) : "t^" + std::to_string(shift_) + "*" + s;
        for (const auto& [d, k] : den_) s += "/(1 - t^" + std::to_string(d) + ")" + (k > 1 ? "^" + std::to_string(k) : "");
        if (is_truncated()) s += " + O(pi^" + std::to_string(prec_) + ")";
        return s;
    }

private:
    static std::int64_t sat_add(std::int64_t a, std::int64_t b) {
        if (a == kExact || b == kExact) return kExact;
        return a + b;
    }

    std::int64_t term_bound(std::int64_t k, const Rational& c, std::int64_t p, int e) const {
        return shift_ + k + static_cast<std::int64_t>(e) * *padic_valuation(c, p);
    }

    static void merge_truncation(PiFraction& r, const PiFraction& a, const PiFraction& b) {
        if (a.is_truncated() && b.is_truncated() && (a.p_ != b.p_ || a.e_ != b.e_))
            throw InvalidInput("truncation parameters disagree");
        const PiFraction& t = a.is_truncated() ? a : b;
        r.p_ = t.p_;
        r.e_ = t.e_;
    }

    void check_model(const NumberField& K) const {
        if (is_truncated() && (K.p() != p_ || K.e() != e_))
            throw InvalidInput("truncated value read in a model with different p or e");
    }

    static FieldElement pi_power(const NumberField& K, std::int64_t k) {
        return k >= 0 ? K.uniformizer().pow(k) : K.uniformizer().inverse().pow(-k);
    }

    /// Sum of the numerator terms whose valuation bound is below `bound`.
    FieldElement partial_value(const NumberField& K, std::int64_t bound) const {
        FieldElement n = K.zero();
        for (const auto& [k, c] : num_)
            if (term_bound(k, c, K.p(), K.e()) < bound) n += pi_power(K, shift_ + k) * c;
        return n;
    }

    static Poly poly_mul(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) r[i + j] += x * y;
        for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
        return r;
    }

    /// (1 - t^d)^m as a sparse polynomial.
    static Poly binomial_power(std::int64_t d, int m) {
        Poly r;
        Integer c = 1;
        for (int j = 0; j <= m; ++j) {
            r[d * j] = (j % 2 == 0) ? Rational(c) : Rational(-c);
            c = c * (m - j) / (j + 1);
        }
        return r;
    }

    static Poly expand_denominator(const std::map<std::int64_t, int>& den) {
        Poly r{{0, Rational(1)}};
        for (const auto& [d, k] : den)
            if (k > 0) r = poly_mul(r, binomial_power(d, k));
        return r;
    }

    static PiFraction combine(const PiFraction& a, const PiFraction& b, int sign) {
        PiFraction r;
        merge_truncation(r, a, b);
        r.prec_ = std::min(a.prec_, b.prec_);
        if (a.num_.empty() && b.num_.empty()) {
            r.normalize();
            return r;
        }
        if (b.num_.empty()) {
            const std::int64_t prec = r.prec_;
            r = a;
            r.p_ = r.p_ ? r.p_ : b.p_;
            r.e_ = r.e_ ? r.e_ : b.e_;
            r.prec_ = prec;
            r.normalize();
            return r;
        }
        if (a.num_.empty()) {
            const std::int64_t prec = r.prec_;
            r = sign > 0 ? b : -b;
            r.p_ = r.p_ ? r.p_ : a.p_;
            r.e_ = r.e_ ? r.e_ : a.e_;
            r.prec_ = prec;
            r.normalize();
            return r;
        }
        r.shift_ = std::min(a.shift_, b.shift_);
        r.den_ = a.den_;
        for (const auto& [d, k] : b.den_) r.den_[d] = std::max(r.den_[d], k);
        auto lift = [&](const PiFraction& x) {
            std::map<std::int64_t, int> missing;
            for (const auto& [d, k] : r.den_) {
                auto it = x.den_.find(d);
                const int have = it == x.den_.end() ? 0 : it->second;
                if (k > have) missing[d] = k - have;
            }
            Poly out;
            const std::int64_t offset = x.shift_ - r.shift_;
            for (const auto& [k, c] : x.num_) out[k + offset] = c;
            return missing.empty() ? out : poly_mul(out, expand_denominator(missing));
        };
        r.num_ = lift(a);
        for (const auto& [k, c] : lift(b)) {
            Rational& slot = r.num_[k];
            if (sign > 0) slot += c;
            else slot -= c;
        }
        r.normalize();
        return r;
    }

    /// Divides num by (1 - t^d) when the quotient stays small.
    bool try_cancel(std::int64_t d) {
        std::map<std::int64_t, Rational> class_sum;
        for (const auto& [k, c] : num_) class_sum[k % d] += c;
        for (const auto& [r, s] : class_sum)
            if (s != 0) return false;
        // Quotient coefficients are running sums along each residue class.
        std::map<std::int64_t, std::vector<std::pair<std::int64_t, Rational>>> classes;
        for (const auto& [k, c] : num_) classes[k % d].emplace_back(k, c);
        std::size_t count = 0;
        const std::size_t limit = 4 * num_.size() + 16;
        for (const auto& [r, terms] : classes) {
            Rational run = 0;
            for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
                run += terms[i].second;
                if (run != 0) count += static_cast<std::size_t>((terms[i + 1].first - terms[i].first) / d);
                if (count > limit) return false;
            }
        }
        Poly q;
        for (const auto& [r, terms] : classes) {
            Rational run = 0;
            for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
                run += terms[i].second;
                if (run == 0) continue;
                for (std::int64_t k = terms[i].first; k < terms[i + 1].first; k += d) q[k] = run;
            }
        }
        num_ = std::move(q);
        return true;
    }

    void normalize() {
        for (auto it = num_.begin(); it != num_.end();) it = (it->second == 0) ? num_.erase(it) : std::next(it);
        for (auto it = den_.begin(); it != den_.end();) it = (it->second == 0) ? den_.erase(it) : std::next(it);
        if (is_truncated()) {
            for (auto it = num_.begin(); it != num_.end();)
                it = (term_bound(it->first, it->second, p_, e_) >= prec_) ? num_.erase(it) : std::next(it);
        }
        if (num_.empty()) {
            shift_ = 0;
            den_.clear();
            return;
        }
        const std::int64_t low = num_.begin()->first;
        if (low != 0) {
            Poly moved;
            for (auto& [k, c] : num_) moved.emplace(k - low, std::move(c));
            num_ = std::move(moved);
            shift_ += low;
        }
        for (auto& [d, k] : den_)
            while (k > 0 && num_.size() > 1 && try_cancel(d)) --k;
        for (auto it = den_.begin(); it != den_.end();) it = (it->second == 0) ? den_.erase(it) : std::next(it);
    }

    Poly num_;
    std::int64_t shift_ = 0;
    std::map<std::int64_t, int> den_;
    std::int64_t p_ = 0;
    int e_ = 0;
    std::int64_t prec_ = kExact;
};

inline std::ostream& operator<<(std::ostream& os, const PiFraction& z) { return os << z.to_string(); }

}  // namespace fmlab
