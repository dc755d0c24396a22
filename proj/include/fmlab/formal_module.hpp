#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fmlab/truncated_series.hpp"

namespace fmlab {

inline std::vector<std::int64_t> powers_up_to(std::int64_t q, std::int64_t N) {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k <= N; k *= q) {
        out.push_back(k);
        if (q == 1) break;
    }
    return out;
}

/// Smallest k with q^k = n, if any.
inline std::optional<int> log_base(std::int64_t n, std::int64_t q) {
    int k = 0;
    std::int64_t acc = 1;
    while (acc < n) {
        acc *= q;
        ++k;
    }
    if (acc == n) return k;
    return std::nullopt;
}

template <class C>
TruncatedSeries<C> exp_from_log(const TruncatedSeries<C>& log) {
    return log.reversion();
}

/// A law with logarithm over a Q-algebra, kept as its truncated logarithm.
/// q is the residue cardinality of the ring acting on it.
template <class C>
class FormalModuleLaw {
public:
    FormalModuleLaw(std::int64_t q, TruncatedSeries<C> log) : q_(q), log_(std::move(log)) {
        if (q < 2) throw InvalidInput("residue cardinality must be at least 2");
        if (!log_.is_strict()) throw InvalidInput("a logarithm must be a strict series");
    }

    /// log(X) = sum_i m_i X^{q^i}, m_0 = 1.
    static FormalModuleLaw typical(std::int64_t q, const std::vector<C>& m, int N, const C& zero, const C& one) {
        if (m.empty() || !(m[0] == one)) throw InvalidInput("typical laws need m_0 = 1");
        TruncatedSeries<C> log(N, zero, one);
        const auto pw = powers_up_to(q, N);
        for (std::size_t i = 0; i < pw.size() && i < m.size(); ++i) log.set(static_cast<int>(pw[i]), m[i]);
        return FormalModuleLaw(q, std::move(log));
    }
    static FormalModuleLaw additive(std::int64_t q, int N, const C& zero, const C& one) {
        return FormalModuleLaw(q, TruncatedSeries<C>::identity(N, zero, one));
    }

    std::int64_t q() const { return q_; }
    int bound() const { return log_.bound(); }
    const TruncatedSeries<C>& log() const { return log_; }
    TruncatedSeries<C> exp() const { return exp_from_log(log_); }
    const C& zero() const { return log_.zero(); }
    const C& one() const { return log_.one(); }

    /// The logarithm is supported on exponents that are powers of qq.
    bool is_typical_for(std::int64_t qq) const {
        for (int k : log_.support())
            if (!log_base(k, qq)) return false;
        return true;
    }
    bool is_typical() const { return is_typical_for(q_); }

    /// m_0, m_1, ... with log = sum m_i X^{q^i}; nullopt for non-typical laws.
    std::optional<std::vector<C>> typical_coefficients() const {
        if (!is_typical()) return std::nullopt;
        std::vector<C> m;
        for (std::int64_t k : powers_up_to(q_, bound())) m.push_back(log_[static_cast<int>(k)]);
        return m;
    }

    friend bool operator==(const FormalModuleLaw& a, const FormalModuleLaw& b) { return a.q_ == b.q_ && a.log_ == b.log_; }

private:
    std::int64_t q_;
    TruncatedSeries<C> log_;
};

/// exp_F(log_F s1 + log_F s2) for series over a ring D receiving F's
/// coefficients through lift.
template <class C, class D, class Lift>
TruncatedSeries<D> formal_sum(const FormalModuleLaw<C>& F, const TruncatedSeries<D>& s1, const TruncatedSeries<D>& s2,
                              Lift&& lift) {
    if (!coeff_is_zero(s1[0]) || !coeff_is_zero(s2[0])) throw InvalidInput("formal sum of series with nonzero constant term");
    const auto log = F.log().map_coefficients(lift);
    const auto exp = F.exp().map_coefficients(lift);
    return exp.compose(log.compose(s1) + log.compose(s2));
}

template <class C>
TruncatedSeries<C> formal_sum(const FormalModuleLaw<C>& F, const TruncatedSeries<C>& s1, const TruncatedSeries<C>& s2) {
    return formal_sum(F, s1, s2, [](const C& c) { return c; });
}

/// F(X, Y) up to total degree N, as a polynomial in x_1 = X and x_2 = Y.
/// Computed as exp_F(log_F(tX) + log_F(tY)) in t.
template <class C>
GradedPoly<C> formal_group_law(const FormalModuleLaw<C>& F) {
    using P = GradedPoly<C>;
    const int N = F.bound();
    const P zero, one = P::constant(F.one());
    auto along = [&](int var) {
        TruncatedSeries<P> s(N, zero, one);
        s.set(1, P::variable(x(var), F.one()));
        return s;
    };
    const auto sum = formal_sum(F, along(1), along(2), [](const C& c) { return P::constant(c); });
    P r;
    for (int k = 0; k <= N; ++k) r = r + sum[k];
    return r;
}

/// [alpha]_F = exp_F(alpha log_F(X)).
template <class C>
TruncatedSeries<C> bracket(const FormalModuleLaw<C>& F, const C& alpha) {
    return F.exp().compose(F.log().scaled(alpha));
}

/// Cartier typification on logarithms: the restriction of log_F to the
/// exponents that are powers of target_q, a power of F.q().
template <class C>
FormalModuleLaw<C> typify(const FormalModuleLaw<C>& F, std::int64_t target_q) {
    const auto k = log_base(target_q, F.q());
    if (!k || *k < 1) throw InvalidInput("typification target must be a positive power of q");
    TruncatedSeries<C> log(F.bound(), F.zero(), F.one());
    for (std::int64_t e : powers_up_to(target_q, F.bound())) log.set(static_cast<int>(e), F.log()[static_cast<int>(e)]);
    return FormalModuleLaw<C>(target_q, std::move(log));
}

/// Strict isomorphism out of a typical F, given by t_0 = 1, t_1, ...
/// with alpha^{-1}(X) = sum^F t_i X^{q^i}.
template <class C>
struct StrictIso {
    FormalModuleLaw<C> source;
    std::vector<C> t;

    /// sum^F_i t_i X^{q^i} = exp_F(sum_i log_F(t_i X^{q^i})).
    TruncatedSeries<C> inverse_series() const {
        const int N = source.bound();
        TruncatedSeries<C> acc(N, source.zero(), source.one());
        const auto pw = powers_up_to(source.q(), N);
        for (std::size_t i = 0; i < t.size() && i < pw.size(); ++i) {
            const auto term = TruncatedSeries<C>::monomial(N, static_cast<int>(pw[i]), t[i], source.zero(), source.one());
            acc = acc + source.log().compose(term);
        }
        return source.exp().compose(acc);
    }
    /// alpha itself.
    TruncatedSeries<C> series() const { return inverse_series().reversion(); }
};

/// Number of typical coefficients m_0..m_K with q^K <= N.
inline std::size_t typical_length(std::int64_t q, int N) { return powers_up_to(q, N).size(); }

/// (alpha, G) with log_G coefficients g_i = sum_{j<=i} m_j t_{i-j}^{q^j}.
template <class C>
std::pair<StrictIso<C>, FormalModuleLaw<C>> iso_from_t(const FormalModuleLaw<C>& F, std::vector<C> t) {
    const auto m = F.typical_coefficients();
    if (!m) throw InvalidInput("iso_from_t needs a typical source law");
    if (t.empty() || !(t[0] == F.one())) throw InvalidInput("iso_from_t needs t_0 = 1");
    const std::size_t K = m->size();
    if (t.size() > K) t.resize(K);
    while (t.size() < K) t.push_back(F.zero());
    std::vector<C> g;
    for (std::size_t i = 0; i < K; ++i) {
        C gi = F.zero();
        for (std::size_t j = 0; j <= i; ++j) gi = gi + (*m)[j] * coeff_pow(t[i - j], checked_pow(F.q(), static_cast<std::int64_t>(j)));
        g.push_back(gi);
    }
    auto G = FormalModuleLaw<C>::typical(F.q(), g, F.bound(), F.zero(), F.one());
    return {StrictIso<C>{F, std::move(t)}, std::move(G)};
}

/// t_i = g_i - sum_{j<i} m_{i-j} t_j^{q^{i-j}} for typical F, G.
template <class C>
std::vector<C> t_from_iso(const FormalModuleLaw<C>& F, const FormalModuleLaw<C>& G) {
    if (F.q() != G.q()) throw InvalidInput("t_from_iso needs laws over the same ring");
    const auto m = F.typical_coefficients();
    const auto g = G.typical_coefficients();
    if (!m || !g) throw InvalidInput("t_from_iso needs typical laws");
    const std::size_t K = std::min(m->size(), g->size());
    std::vector<C> t;
    for (std::size_t i = 0; i < K; ++i) {
        C ti = (*g)[i];
        for (std::size_t j = 0; j < i; ++j) ti = ti - (*m)[i - j] * coeff_pow(t[j], checked_pow(F.q(), static_cast<std::int64_t>(i - j)));
        t.push_back(ti);
    }
    return t;
}

/// phi o rho o phi^{-1}.
template <class C>
TruncatedSeries<C> transport_structure(const TruncatedSeries<C>& phi, const TruncatedSeries<C>& rho) {
    if (!phi.is_strict()) throw InvalidInput("transport needs a strict series");
    return phi.compose(rho.compose(phi.reversion()));
}

/// [zeta]_F(X) == zeta X, for zeta a root of unity of the given order.
template <class C>
bool is_linear_on_root(const FormalModuleLaw<C>& F, const C& zeta, std::int64_t order) {
    if (!(coeff_pow(zeta, order) == F.one())) throw InvalidInput("zeta is not a root of unity of the stated order");
    const auto b = bracket(F, zeta);
    return b == TruncatedSeries<C>::monomial(F.bound(), 1, zeta, F.zero(), F.one());
}

}  // namespace fmlab
