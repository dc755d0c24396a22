#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fmlab/coefficients.hpp"
#include "fmlab/rational.hpp"

namespace fmlab {

/// Generator families. X is an auxiliary degree-one variable (power-series
/// and symmetric-polynomial variables).
enum class Family : std::uint8_t { X = 0, T = 1, ArakiV = 2, HazewinkelV = 3 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::X: return "x";
        case Family::T: return "t";
        case Family::ArakiV: return "v";
        case Family::HazewinkelV: return "V";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "x") return Family::X;
    if (s == "t") return Family::T;
    if (s == "v") return Family::ArakiV;
    if (s == "V") return Family::HazewinkelV;
    throw InvalidInput("unknown variable family '" + s + "'");
}

struct Variable {
    Family family = Family::HazewinkelV;
    char tag = 'A';
    int index = 1;

    friend auto operator<=>(const Variable&, const Variable&) = default;

    std::string to_string() const {
        std::string s = std::string(family_name(family)) + "_" + std::to_string(index);
        if (family != Family::X) s += "[" + std::string(1, tag) + "]";
        return s;
    }
};

inline Variable V(int i, char tag = 'A') { return {Family::HazewinkelV, tag, i}; }
inline Variable v(int i, char tag = 'A') { return {Family::ArakiV, tag, i}; }
inline Variable t(int i, char tag = 'A') { return {Family::T, tag, i}; }
inline Variable x(int i, char tag = 'x') { return {Family::X, tag, i}; }

/// 2(q^i - 1) for the generator families, 1 for X.
inline std::int64_t degree(const Variable& var, std::int64_t q) {
    if (var.family == Family::X) return 1;
    return 2 * (checked_pow(q, var.index) - 1);
}

/// Product of variable powers, stored highest variable first with positive
/// exponents.
class Monomial {
public:
    using Factor = std::pair<Variable, std::int64_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors) : f_(std::move(factors)) { canonicalize(); }
    static Monomial of(const Variable& var, std::int64_t exponent = 1) { return Monomial({{var, exponent}}); }

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }

    std::int64_t exponent(const Variable& var) const {
        for (const auto& [w, e] : f_)
            if (w == var) return e;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<Factor> r;
        r.reserve(a.f_.size() + b.f_.size());
        std::size_t i = 0, j = 0;
        while (i < a.f_.size() || j < b.f_.size()) {
            if (j == b.f_.size() || (i < a.f_.size() && a.f_[i].first > b.f_[j].first)) r.push_back(a.f_[i++]);
            else if (i == a.f_.size() || b.f_[j].first > a.f_[i].first) r.push_back(b.f_[j++]);
            else {
                r.emplace_back(a.f_[i].first, a.f_[i].second + b.f_[j].second);
                ++i, ++j;
            }
        }
        Monomial m;
        m.f_ = std::move(r);
        return m;
    }

    Monomial pow(std::int64_t n) const {
        if (n < 0) throw InvalidInput("negative monomial power");
        if (n == 0) return {};
        Monomial m = *this;
        for (auto& [w, e] : m.f_) e *= n;
        return m;
    }

    /// Additive over products.
    std::int64_t degree(std::int64_t q) const {
        std::int64_t d = 0;
        for (const auto& [w, e] : f_) d += fmlab::degree(w, q) * e;
        return d;
    }
    template <class QOf>
    std::int64_t degree_by(QOf&& q_of_tag) const {
        std::int64_t d = 0;
        for (const auto& [w, e] : f_) d += fmlab::degree(w, q_of_tag(w.tag)) * e;
        return d;
    }

    std::set<Family> families() const {
        std::set<Family> s;
        for (const auto& [w, e] : f_) s.insert(w.family);
        return s;
    }
    std::set<char> tags() const {
        std::set<char> s;
        for (const auto& [w, e] : f_) s.insert(w.tag);
        return s;
    }

    /// Lexicographic, comparing the exponent of the highest variable first.
    static std::strong_ordering lex(const Monomial& a, const Monomial& b) {
        std::size_t i = 0;
        for (;; ++i) {
            const bool ea = i == a.f_.size(), eb = i == b.f_.size();
            if (ea && eb) return std::strong_ordering::equal;
            if (ea) return std::strong_ordering::less;
            if (eb) return std::strong_ordering::greater;
            const auto& [va, xa] = a.f_[i];
            const auto& [vb, xb] = b.f_[i];
            if (va != vb) return va > vb ? std::strong_ordering::greater : std::strong_ordering::less;
            if (xa != xb) return xa > xb ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::string to_string() const {
        if (f_.empty()) return "1";
        std::string s;
        for (const auto& [w, e] : f_) {
            if (!s.empty()) s += "*";
            s += w.to_string();
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    void canonicalize() {
        std::sort(f_.begin(), f_.end(), [](const Factor& a, const Factor& b) { return a.first > b.first; });
        std::vector<Factor> merged;
        for (const auto& [w, e] : f_) {
            if (e < 0) throw InvalidInput("negative exponent in monomial");
            if (!merged.empty() && merged.back().first == w) merged.back().second += e;
            else merged.emplace_back(w, e);
        }
        std::erase_if(merged, [](const Factor& fa) { return fa.second == 0; });
        f_ = std::move(merged);
    }

    std::vector<Factor> f_;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::lex(a, b) < 0; }
};

/// Order of the monomial ordering on one generator family; mixed families
/// are rejected.
inline std::strong_ordering compare(const Monomial& a, const Monomial& b) {
    std::set<Family> fam = a.families();
    for (Family f : b.families()) fam.insert(f);
    if (fam.size() > 1) throw InvalidInput("compare needs monomials over one variable family");
    return Monomial::lex(a, b);
}

/// Sparse polynomial with no stored zero coefficients.
template <class C>
class GradedPoly {
public:
    using Coeff = C;
    using Terms = std::map<Monomial, C, MonomialLess>;

    GradedPoly() = default;

    static GradedPoly constant(const C& c) { return term(Monomial(), c); }
    static GradedPoly term(const Monomial& m, const C& c) {
        GradedPoly p;
        if (!coeff_is_zero(c)) p.t_.emplace(m, c);
        return p;
    }
    static GradedPoly variable(const Variable& var, const C& one) { return term(Monomial::of(var), one); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    const C* coefficient(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? nullptr : &it->second;
    }

    void add_term(const Monomial& m, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (coeff_is_zero(it->second)) t_.erase(it);
    }

    std::set<char> tags() const {
        std::set<char> s;
        for (const auto& [m, c] : t_)
            for (char tg : m.tags()) s.insert(tg);
        return s;
    }
    std::set<Family> families() const {
        std::set<Family> s;
        for (const auto& [m, c] : t_)
            for (Family f : m.families()) s.insert(f);
        return s;
    }

    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
        check_tags(a, b);
        return add_mixed(a, b);
    }
    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) {
        check_tags(a, b);
        return add_mixed(a, -b);
    }
    GradedPoly operator-() const {
        GradedPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        check_tags(a, b);
        return mul_mixed(a, b);
    }
    GradedPoly& operator+=(const GradedPoly& o) { return *this = *this + o; }
    GradedPoly& operator-=(const GradedPoly& o) { return *this = *this - o; }
    GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

    /// Sum without the ring-tag check; used where tags are meant to mix.
    static GradedPoly add_mixed(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    static GradedPoly mul_mixed(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    GradedPoly scaled(const C& s) const {
        GradedPoly r;
        for (const auto& [m, c] : t_) r.add_term(m, c * s);
        return r;
    }
    GradedPoly times_monomial(const Monomial& mono) const {
        GradedPoly r;
        for (const auto& [m, c] : t_) r.t_.emplace(m * mono, c);
        return r;
    }

    /// n-th power for n >= 0; in characteristic p the p-power part is
    /// applied termwise (Frobenius).
    GradedPoly pow(std::int64_t n) const {
        if (n < 0) throw InvalidInput("negative polynomial power");
        if (t_.empty()) {
            if (n == 0) throw InvalidInput("0^0 in a polynomial ring of unknown coefficients");
            return {};
        }
        if (n == 0) return constant(one_like(t_.begin()->second));
        if (t_.size() == 1) {
            const auto& [m, c] = *t_.begin();
            return term(m.pow(n), coeff_pow(c, n));
        }
        const std::int64_t p = coeff_characteristic(t_.begin()->second);
        if (p > 0 && n % p == 0) {
            GradedPoly r;
            for (const auto& [m, c] : t_) r.add_term(m.pow(p), coeff_pow(c, p));
            return r.pow(n / p);
        }
        GradedPoly result = constant(one_like(t_.begin()->second)), base = *this;
        while (n > 0) {
            if (n & 1) result = mul_mixed(result, base);
            n >>= 1;
            if (n > 0) base = mul_mixed(base, base);
        }
        return result;
    }

    const Monomial& leading_monomial() const {
        if (t_.empty()) throw InvalidInput("leading monomial of the zero polynomial");
        return t_.rbegin()->first;
    }
    const C& leading_coefficient() const {
        if (t_.empty()) throw InvalidInput("leading coefficient of the zero polynomial");
        return t_.rbegin()->second;
    }

    /// Common degree of all terms, if there is one.
    std::optional<std::int64_t> homogeneous_degree(std::int64_t q) const {
        return homogeneous_degree_by([q](char) { return q; });
    }
    template <class QOf>
    std::optional<std::int64_t> homogeneous_degree_by(QOf&& q_of_tag) const {
        std::optional<std::int64_t> d;
        for (const auto& [m, c] : t_) {
            const std::int64_t dm = m.degree_by(q_of_tag);
            if (d && *d != dm) return std::nullopt;
            d = dm;
        }
        if (!d) return std::int64_t{0};
        return d;
    }

    /// Ring map sending each variable to image(var) when that returns a
    /// value and fixing it otherwise. Coefficients are multiplied in.
    template <class Image>
    GradedPoly substitute(Image&& image) const {
        std::map<std::pair<Variable, std::int64_t>, GradedPoly> powers;
        std::map<Variable, std::optional<GradedPoly>> images;
        auto power_of = [&](const Variable& var, std::int64_t e) -> const GradedPoly& {
            auto key = std::make_pair(var, e);
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            auto im = images.find(var);
            if (im == images.end()) im = images.emplace(var, image(var)).first;
            GradedPoly value;
            if (!im->second) value = variable_power(var, e);
            else if (im->second->is_zero()) value = GradedPoly();
            else value = im->second->pow(e);
            return powers.emplace(key, std::move(value)).first->second;
        };
        GradedPoly result;
        for (const auto& [m, c] : t_) {
            GradedPoly prod = constant(c);
            for (const auto& [var, e] : m.factors()) {
                prod = mul_mixed(prod, power_of(var, e));
                if (prod.is_zero()) break;
            }
            result = add_mixed(result, prod);
        }
        return result;
    }

    template <class F>
    auto map_coefficients(F&& fn) const -> GradedPoly<decltype(fn(std::declval<const C&>()))> {
        using D = decltype(fn(std::declval<const C&>()));
        GradedPoly<D> r;
        for (const auto& [m, c] : t_) r.add_term(m, fn(c));
        return r;
    }

    /// Keeps the terms satisfying pred(monomial, coefficient).
    template <class Pred>
    GradedPoly filter(Pred&& pred) const {
        GradedPoly r;
        for (const auto& [m, c] : t_)
            if (pred(m, c)) r.t_.emplace(m, c);
        return r;
    }

    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        auto i = a.t_.begin();
        auto j = b.t_.begin();
        for (; i != a.t_.end(); ++i, ++j)
            if (!(i->first == j->first) || !(i->second == j->second)) return false;
        return true;
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_string(it->second) + ")";
            if (!it->first.is_one()) s += "*" + it->first.to_string();
        }
        return s;
    }

private:
    GradedPoly variable_power(const Variable& var, std::int64_t e) const {
        return term(Monomial::of(var, e), one_like(t_.begin()->second));
    }

    static void check_tags(const GradedPoly& a, const GradedPoly& b) {
        if (a.t_.empty() || b.t_.empty()) return;
        const auto ta = a.tags(), tb = b.tags();
        if (ta.empty() || tb.empty()) return;
        for (char c : ta)
            if (tb.count(c)) return;
        throw InvalidInput("arithmetic between polynomials over different moduli rings");
    }

    static std::string coeff_string(const C& c) {
        if constexpr (std::is_same_v<C, Rational>) return c.get_str();
        else return c.to_string();
    }

    Terms t_;
};

inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }
template <class C>
std::ostream& operator<<(std::ostream& os, const GradedPoly<C>& p) {
    return os << p.to_string();
}

}  // namespace fmlab
