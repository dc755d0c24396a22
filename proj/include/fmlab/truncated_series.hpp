#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmlab/coefficients.hpp"
#include "fmlab/graded_poly.hpp"

namespace fmlab {

template <class D>
bool coeff_is_zero(const GradedPoly<D>& c) {
    return c.is_zero();
}
template <class D>
GradedPoly<D> coeff_pow(const GradedPoly<D>& c, std::int64_t n) {
    return c.pow(n);
}

// Multiplication of a coefficient by a rational number.
inline Rational scale_rational(const Rational& c, const Rational& r) { return c * r; }
inline FieldElement scale_rational(const FieldElement& c, const Rational& r) { return c * r; }
inline PiFraction scale_rational(const PiFraction& c, const Rational& r) { return c * r; }
template <class D>
GradedPoly<D> scale_rational(const GradedPoly<D>& c, const Rational& r) {
    return c.map_coefficients([&](const D& d) { return scale_rational(d, r); });
}

/// Power series c_0 + c_1 X + ... + c_N X^N modulo X^{N+1}. The ring's zero
/// and one travel with the value so coefficient types without a global unit
/// (polynomials, field elements) work alike.
template <class C>
class TruncatedSeries {
public:
    TruncatedSeries(int N, C zero, C one) : c_(static_cast<std::size_t>(N) + 1, zero), zero_(zero), one_(one) {
        if (N < 0) throw InvalidInput("truncation bound must be nonnegative");
    }

    static TruncatedSeries identity(int N, const C& zero, const C& one) { return monomial(N, 1, one, zero, one); }
    static TruncatedSeries monomial(int N, int k, const C& c, const C& zero, const C& one) {
        TruncatedSeries s(N, zero, one);
        if (k <= N) s.set(k, c);
        return s;
    }
    static TruncatedSeries from_coefficients(int N, const std::vector<C>& coeffs, const C& zero, const C& one) {
        TruncatedSeries s(N, zero, one);
        for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= N; ++k) s.c_[k] = coeffs[k];
        return s;
    }

    int bound() const { return static_cast<int>(c_.size()) - 1; }
    const C& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    void set(int k, const C& c) { c_.at(static_cast<std::size_t>(k)) = c; }
    const C& zero() const { return zero_; }
    const C& one() const { return one_; }
    const std::vector<C>& coefficients() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!coeff_is_zero(c)) return false;
        return true;
    }
    /// Index of the first nonzero coefficient; bound() + 1 for zero.
    int order() const {
        for (int k = 0; k <= bound(); ++k)
            if (!coeff_is_zero(c_[static_cast<std::size_t>(k)])) return k;
        return bound() + 1;
    }
    bool is_strict() const { return coeff_is_zero(c_[0]) && (bound() < 1 || c_[1] == one_); }
    std::vector<int> support() const {
        std::vector<int> s;
        for (int k = 0; k <= bound(); ++k)
            if (!coeff_is_zero(c_[static_cast<std::size_t>(k)])) s.push_back(k);
        return s;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r = a.common(b);
        for (int k = 0; k <= r.bound(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r = a.common(b);
        for (int k = 0; k <= r.bound(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    TruncatedSeries operator-() const {
        TruncatedSeries r(bound(), zero_, one_);
        for (int k = 0; k <= bound(); ++k) r.c_[k] = zero_ - c_[k];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r = a.common(b);
        const int N = r.bound();
        const auto sa = a.support(), sb = b.support();
        for (int i : sa) {
            if (i > N) break;
            for (int j : sb) {
                if (i + j > N) break;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    TruncatedSeries scaled(const C& s) const {
        TruncatedSeries r = *this;
        for (auto& c : r.c_) c = s * c;
        return r;
    }
    TruncatedSeries pow(std::int64_t n) const {
        if (n < 0) throw InvalidInput("negative power of a truncated series");
        TruncatedSeries result = monomial(bound(), 0, one_, zero_, one_), base = *this;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return result;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        const int N = std::min(a.bound(), b.bound());
        for (int k = 0; k <= N; ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }

    TruncatedSeries truncate(int M) const {
        TruncatedSeries r(std::min(M, bound()), zero_, one_);
        for (int k = 0; k <= r.bound(); ++k) r.c_[k] = c_[k];
        return r;
    }

    template <class F>
    auto map_coefficients(F&& fn) const -> TruncatedSeries<decltype(fn(std::declval<const C&>()))> {
        using D = decltype(fn(std::declval<const C&>()));
        TruncatedSeries<D> r(bound(), fn(zero_), fn(one_));
        for (int k = 0; k <= bound(); ++k) r.set(k, fn(c_[k]));
        return r;
    }

    /// this(g(X)); g must have zero constant term. Sparse inputs power g by
    /// squaring per exponent, dense ones use Horner.
    TruncatedSeries compose(const TruncatedSeries& g) const {
        if (!coeff_is_zero(g.c_[0])) throw InvalidInput("composition needs an inner series with zero constant term");
        const int N = std::min(bound(), g.bound());
        const auto supp = support();
        if (supp.size() * 4 < static_cast<std::size_t>(N) + 1) {
            const TruncatedSeries gt = g.truncate(N);
            TruncatedSeries r(N, zero_, one_);
            for (int k : supp) {
                if (k > N) break;
                r = r + gt.pow(k).scaled(c_[k]);
            }
            return r;
        }
        TruncatedSeries r = monomial(N, 0, c_[N], zero_, one_);
        const TruncatedSeries gt = g.truncate(N);
        for (int k = N - 1; k >= 0; --k) {
            r = r * gt;
            r.c_[0] = r.c_[0] + c_[k];
        }
        return r;
    }

    /// Compositional inverse of a strict series by Lagrange inversion:
    /// [X^n] f^{-1} = (1/n) [X^{n-1}] (X/f)^n.
    TruncatedSeries reversion() const {
        if (!is_strict()) throw InvalidInput("reversion needs a strict series (zero constant term, linear coefficient 1)");
        const int N = bound();
        TruncatedSeries r(N, zero_, one_);
        if (N < 1) return r;
        r.c_[1] = one_;
        // u = f/X, unit with constant term 1; h = 1/u.
        TruncatedSeries u(N - 1, zero_, one_), h(N - 1, zero_, one_);
        for (int k = 0; k <= N - 1; ++k) u.c_[k] = c_[k + 1];
        h.c_[0] = one_;
        const auto su = u.support();
        for (int n = 1; n <= N - 1; ++n) {
            C acc = zero_;
            for (int k : su) {
                if (k == 0) continue;
                if (k > n) break;
                acc = acc + u.c_[k] * h.c_[n - k];
            }
            h.c_[n] = zero_ - acc;
        }
        TruncatedSeries hn = h;
        for (int n = 2; n <= N; ++n) {
            hn = hn * h;
            r.c_[n] = scale_rational(hn.c_[n - 1], Rational(1, n));
        }
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int k = 0; k <= bound(); ++k) {
            if (coeff_is_zero(c_[k])) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeff_text(c_[k]) + ")*X^" + std::to_string(k);
        }
        return s.empty() ? "0" : s + " + O(X^" + std::to_string(bound() + 1) + ")";
    }

private:
    TruncatedSeries common(const TruncatedSeries& b) const { return TruncatedSeries(std::min(bound(), b.bound()), zero_, one_); }

    static std::string coeff_text(const C& c) {
        if constexpr (std::is_same_v<C, Rational>) return c.get_str();
        else return c.to_string();
    }

    std::vector<C> c_;
    C zero_, one_;
};

}  // namespace fmlab
