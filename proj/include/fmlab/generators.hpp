#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "fmlab/coefficients.hpp"
#include "fmlab/graded_poly.hpp"

namespace fmlab {

/// Finite sequence of positive integers.
using IndexSequence = std::vector<int>;

inline int norm(const IndexSequence& I) { return std::accumulate(I.begin(), I.end(), 0); }

/// All compositions of h, in lexicographic order; {()} for h = 0.
inline std::vector<IndexSequence> compositions(int h) {
    if (h < 0) throw InvalidInput("compositions of a negative integer");
    std::vector<IndexSequence> out;
    IndexSequence cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int first = 1; first <= rest; ++first) {
            cur.push_back(first);
            self(self, rest - first);
            cur.pop_back();
        }
    };
    rec(rec, h);
    return out;
}

/// Pi(h) = pi - pi^{q^h}.
template <class Ctx>
typename Ctx::Coeff pi_of_height(int h, const Ctx& ctx) {
    return ctx.pi() - ctx.pi_power(checked_pow(ctx.q(), h));
}

/// Pi(emptyset) = 1 and Pi(I) = Pi(||I||) Pi(I without its last entry),
/// i.e. the product of Pi over the partial sums of I.
template <class Ctx>
typename Ctx::Coeff pi_value(const IndexSequence& I, const Ctx& ctx) {
    auto r = ctx.one();
    int s = 0;
    for (int i : I) {
        s += i;
        r = r * pi_of_height(s, ctx);
    }
    return r;
}

/// 1 / Pi(I), inverted factor by factor.
template <class Ctx>
typename Ctx::Coeff pi_value_inverse(const IndexSequence& I, const Ctx& ctx) {
    auto r = ctx.one();
    int s = 0;
    for (int i : I) {
        s += i;
        r = r * ctx.inverse(pi_of_height(s, ctx));
    }
    return r;
}

/// v_I = v_{i_1} (v_{(i_2,...)})^{q^{i_1}}: each entry carries the exponent
/// q^{sum of the entries before it}. The family picks v or V.
inline Monomial sequence_monomial(const IndexSequence& I, Family family, char tag, std::int64_t q) {
    std::vector<Monomial::Factor> f;
    int s = 0;
    for (int i : I) {
        f.emplace_back(Variable{family, tag, i}, checked_pow(q, s));
        s += i;
    }
    return Monomial(std::move(f));
}

template <class Ctx>
GradedPoly<typename Ctx::Coeff> v_monomial(const IndexSequence& I, const Ctx& ctx, char tag = 'A') {
    return GradedPoly<typename Ctx::Coeff>::term(sequence_monomial(I, Family::ArakiV, tag, ctx.q()), ctx.one());
}

/// l_h = sum over compositions I of h of v_I / Pi(I).
template <class Ctx>
GradedPoly<typename Ctx::Coeff> log_araki(int h, const Ctx& ctx, char tag = 'A') {
    GradedPoly<typename Ctx::Coeff> r;
    for (const auto& I : compositions(h))
        r.add_term(sequence_monomial(I, Family::ArakiV, tag, ctx.q()), pi_value_inverse(I, ctx));
    return r;
}

/// l_h = sum over compositions (i_1..i_r) of h of pi^{-r} V_{i_1} V_{i_2}^{q^{i_1}} ...
template <class Ctx>
GradedPoly<typename Ctx::Coeff> log_hazewinkel(int h, const Ctx& ctx, char tag = 'A') {
    GradedPoly<typename Ctx::Coeff> r;
    const auto inv_pi = ctx.inverse(ctx.pi());
    for (const auto& I : compositions(h)) {
        auto c = ctx.one();
        for (std::size_t k = 0; k < I.size(); ++k) c = c * inv_pi;
        r.add_term(sequence_monomial(I, Family::HazewinkelV, tag, ctx.q()), c);
    }
    return r;
}

template <class Ctx>
GradedPoly<typename Ctx::Coeff> log_expansion(int h, const Ctx& ctx, Family family, char tag = 'A') {
    if (family == Family::ArakiV) return log_araki(h, ctx, tag);
    if (family == Family::HazewinkelV) return log_hazewinkel(h, ctx, tag);
    throw InvalidInput("log expansions exist for the v and V families only");
}

/// pi l_h == sum_{i=0}^{h} l_i (v_{h-i})^{q^i}, with v_0 = pi.
template <class Ctx>
bool verify_araki(int h, const Ctx& ctx, char tag = 'A') {
    using P = GradedPoly<typename Ctx::Coeff>;
    const P lhs = log_araki(h, ctx, tag).scaled(ctx.pi());
    P rhs;
    for (int i = 0; i <= h; ++i) {
        const P li = log_araki(i, ctx, tag);
        const std::int64_t e = checked_pow(ctx.q(), i);
        if (i == h) rhs += li.scaled(ctx.pi_power(e));
        else rhs += li.times_monomial(Monomial::of(v(h - i, tag), e));
    }
    return lhs == rhs;
}

/// pi l_h == sum_{i=0}^{h-1} l_i (V_{h-i})^{q^i}; h = 0 holds by convention.
template <class Ctx>
bool verify_hazewinkel(int h, const Ctx& ctx, char tag = 'A') {
    using P = GradedPoly<typename Ctx::Coeff>;
    if (h == 0) return true;
    const P lhs = log_hazewinkel(h, ctx, tag).scaled(ctx.pi());
    P rhs;
    for (int i = 0; i < h; ++i)
        rhs += log_hazewinkel(i, ctx, tag).times_monomial(Monomial::of(V(h - i, tag), checked_pow(ctx.q(), i)));
    return lhs == rhs;
}

/// v_1, ..., v_h written in V_1, ..., V_h by equating the Araki and
/// Hazewinkel expansions of each l_k and solving for v_k. Entry 0 is 1.
template <class Ctx>
std::vector<GradedPoly<typename Ctx::Coeff>> araki_in_hazewinkel(int h, const Ctx& ctx, char tag = 'A') {
    using P = GradedPoly<typename Ctx::Coeff>;
    std::vector<P> images{P::constant(ctx.one())};
    for (int k = 1; k <= h; ++k) {
        const Monomial lead = Monomial::of(v(k, tag));
        const P rest = log_araki(k, ctx, tag).filter([&](const Monomial& m, const auto&) { return !(m == lead); });
        const P rest_in_V = rest.substitute([&](const Variable& var) -> std::optional<P> {
            if (var.family == Family::ArakiV && var.tag == tag) return images.at(static_cast<std::size_t>(var.index));
            return std::nullopt;
        });
        const P vk = P::add_mixed(log_hazewinkel(k, ctx, tag), -rest_in_V).scaled(pi_of_height(k, ctx));
        images.push_back(vk);
    }
    return images;
}

/// Coefficientwise reduction modulo the maximal ideal.
template <class Ctx>
GradedPoly<FiniteFieldElement> reduce_mod_pi(const GradedPoly<typename Ctx::Coeff>& p, const Ctx& ctx) {
    return p.map_coefficients([&](const typename Ctx::Coeff& c) { return ctx.residue(c); });
}

/// True when every coefficient has valuation >= 0.
template <class Ctx>
bool is_integral(const GradedPoly<typename Ctx::Coeff>& p, const Ctx& ctx) {
    for (const auto& [m, c] : p.terms()) {
        const auto val = ctx.valuation(c);
        if (val && *val < 0) return false;
    }
    return true;
}

/// (v_h written in V) - V_h reduces to zero modulo pi.
template <class Ctx>
bool araki_congruent_to_hazewinkel(int h, const Ctx& ctx, char tag = 'A') {
    using P = GradedPoly<typename Ctx::Coeff>;
    const auto images = araki_in_hazewinkel(h, ctx, tag);
    const P diff = images.at(static_cast<std::size_t>(h)) - P::variable(V(h, tag), ctx.one());
    if (!is_integral(diff, ctx)) return false;
    return reduce_mod_pi(diff, ctx).is_zero();
}

/// The same test in Q(t) modulo pi^{h(h+1)/2 + 1}, for fields where the
/// exact images are too large. l_k has coefficients of valuation >= -k and
/// v_1, ..., v_{h-1} are integral, so each step loses at most k - 1 digits
/// and v_h stays known modulo pi. Both premises are checked exactly.
inline bool araki_congruent_to_hazewinkel_truncated(int h, const NumberField& K, char tag = 'A') {
    using P = GradedPoly<PiFraction>;
    if (h < 1) throw InvalidInput("the congruence needs h >= 1");
    const SymbolicContext exact(K);
    for (int k = 1; k <= h; ++k)
        for (const P& l : {log_araki(k, exact, tag), log_hazewinkel(k, exact, tag)})
            for (const auto& [m, c] : l.terms())
                if (*exact.valuation(c) < -k) return false;
    const auto lower = araki_in_hazewinkel(h - 1, exact, tag);
    for (const P& img : lower)
        if (!is_integral(img, exact)) return false;
    const std::int64_t prec = static_cast<std::int64_t>(h) * (h + 1) / 2 + 1;
    const SymbolicContext ctx(K, K.q(), 1, prec);
    const auto images = araki_in_hazewinkel(h, ctx, tag);
    const P diff = images.at(static_cast<std::size_t>(h)) - P::variable(V(h, tag), ctx.one());
    for (const auto& [m, c] : diff.terms())
        if (c.precision() < 1) return false;
    if (!is_integral(diff, ctx)) return false;
    return reduce_mod_pi(diff, ctx).is_zero();
}

/// Power sum x_1^{q^k} + ... + x_m^{q^k}.
template <class Ctx>
GradedPoly<typename Ctx::Coeff> power_sum(int k, int m, const Ctx& ctx) {
    GradedPoly<typename Ctx::Coeff> r;
    for (int s = 1; s <= m; ++s) r.add_term(Monomial::of(x(s), checked_pow(ctx.q(), k)), ctx.one());
    return r;
}

template <class Ctx>
void assert_integral(const GradedPoly<typename Ctx::Coeff>& p, const Ctx& ctx, const std::string& what) {
    if (!is_integral(p, ctx)) throw MathAssertion(what + " has a coefficient of negative valuation");
}

/// w_0, ..., w_j from sum_t x_t^{q^k} = sum_{i<=k} pi^i w_i^{q^{k-i}}.
template <class Ctx>
std::vector<GradedPoly<typename Ctx::Coeff>> w_int(int j, int m, const Ctx& ctx) {
    using P = GradedPoly<typename Ctx::Coeff>;
    if (j < 0 || m < 1) throw InvalidInput("w_int needs j >= 0 and m >= 1");
    std::vector<P> w;
    const auto inv_pi = ctx.inverse(ctx.pi());
    for (int k = 0; k <= j; ++k) {
        P acc = power_sum(k, m, ctx);
        for (int i = 0; i < k; ++i) acc -= w[static_cast<std::size_t>(i)].pow(checked_pow(ctx.q(), k - i)).scaled(ctx.pi_power(i));
        auto scale = ctx.one();
        for (int i = 0; i < k; ++i) scale = scale * inv_pi;
        P wk = acc.scaled(scale);
        assert_integral(wk, ctx, "w_" + std::to_string(k));
        w.push_back(std::move(wk));
    }
    return w;
}

/// w_H for sequences H, from
///   sum_t x_t^{q^{||H||}} = sum_{H = IJ} (Pi(H)/Pi(I)) (w_J)^{q^{||I||}}.
/// Results are memoized per sequence.
template <class Ctx>
class WSequence {
public:
    using P = GradedPoly<typename Ctx::Coeff>;

    WSequence(int m, Ctx ctx) : m_(m), ctx_(std::move(ctx)) {
        if (m < 1) throw InvalidInput("w_seq needs m >= 1");
    }

    const P& operator()(const IndexSequence& H) {
        auto it = memo_.find(H);
        if (it != memo_.end()) return it->second;
        P value;
        if (H.empty()) {
            value = power_sum(0, m_, ctx_);
        } else {
            P acc = power_sum(norm(H), m_, ctx_);
            // Pi(H)/Pi(I) for the prefix I of length l is the product of
            // Pi over the partial sums of H beyond position l.
            std::vector<int> partial;
            int s = 0;
            for (int i : H) partial.push_back(s += i);
            for (std::size_t len = 1; len <= H.size(); ++len) {
                const IndexSequence J(H.begin() + static_cast<std::ptrdiff_t>(len), H.end());
                auto ratio = ctx_.one();
                for (std::size_t k = len; k < H.size(); ++k) ratio = ratio * pi_of_height(partial[k], ctx_);
                const int normI = partial[len - 1];
                acc -= (*this)(J).pow(checked_pow(ctx_.q(), normI)).scaled(ratio);
            }
            value = acc.scaled(pi_value_inverse(H, ctx_));
        }
        assert_integral(value, ctx_, "w_seq");
        return memo_.emplace(H, std::move(value)).first->second;
    }

    /// w_I == (w_{|I|})^{q^{||I|| - |I|}} modulo pi, with w_{|I|} from w_int.
    bool congruence_holds(const IndexSequence& I) {
        const auto wi = w_int(static_cast<int>(I.size()), m_, ctx_);
        const P rhs = wi.back().pow(checked_pow(ctx_.q(), norm(I) - static_cast<int>(I.size())));
        return reduce_mod_pi((*this)(I) - rhs, ctx_).is_zero();
    }

    int variable_count() const { return m_; }

private:
    int m_;
    Ctx ctx_;
    std::map<IndexSequence, P> memo_;
};

template <class Ctx>
GradedPoly<typename Ctx::Coeff> w_seq(const IndexSequence& I, int m, const Ctx& ctx) {
    WSequence<Ctx> w(m, ctx);
    return w(I);
}

/// Invariance under every transposition of the x variables.
template <class C>
bool is_symmetric(const GradedPoly<C>& p, int m) {
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
            const auto swapped = p.substitute([&](const Variable& var) -> std::optional<GradedPoly<C>> {
                if (var.family != Family::X || p.is_zero()) return std::nullopt;
                if (var.index == a) return GradedPoly<C>::variable(x(b), one_like(p.terms().begin()->second));
                if (var.index == b) return GradedPoly<C>::variable(x(a), one_like(p.terms().begin()->second));
                return std::nullopt;
            });
            if (!(swapped == p)) return false;
        }
    return true;
}

}  // namespace fmlab
