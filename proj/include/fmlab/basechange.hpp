#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "fmlab/coefficients.hpp"
#include "fmlab/generators.hpp"
#include "fmlab/graded_poly.hpp"
#include "fmlab/linear_algebra.hpp"
#include "fmlab/number_field.hpp"

namespace fmlab {

enum class Basis { Araki, Hazewinkel };

inline Family family_of(Basis b) { return b == Basis::Araki ? Family::ArakiV : Family::HazewinkelV; }
inline const char* basis_name(Basis b) { return b == Basis::Araki ? "araki" : "hazewinkel"; }
inline Basis basis_from_name(const std::string& s) {
    if (s == "araki") return Basis::Araki;
    if (s == "hazewinkel") return Basis::Hazewinkel;
    throw InvalidInput("unknown basis '" + s + "' (expected araki or hazewinkel)");
}

/// An extension L/K of models with K embedded exactly in L.
class Extension {
public:
    static Extension make(const NumberField& base, const NumberField& top) {
        Extension x;
        x.emb_ = FieldEmbedding::make(base, top);
        x.e_ = top.e() / base.e();
        x.f_ = top.f() / base.f();
        x.pi_base_ = x.emb_(base.uniformizer());
        return x;
    }

    const NumberField& base() const { return emb_.source(); }
    const NumberField& top() const { return emb_.target(); }
    const FieldEmbedding& embedding() const { return emb_; }
    int e() const { return e_; }
    int f() const { return f_; }
    std::int64_t q_base() const { return base().q(); }
    std::int64_t q_top() const { return top().q(); }
    bool is_unramified() const { return e_ == 1; }
    bool is_totally_ramified() const { return f_ == 1; }
    bool is_tame() const { return e_ == 1 || top().p() % e_ != 0; }

    /// pi_K as an element of L.
    const FieldElement& base_uniformizer() const { return pi_base_; }
    /// alpha = pi_K / pi_L^e, a unit of L.
    FieldElement alpha() const { return pi_base_ / top().uniformizer().pow(std::int64_t{e_}); }

    /// pi_K is exactly pi_L^e, so both sides live in Q(t) with t = pi_L.
    bool symbolic_route_available() const { return alpha() == top().one(); }

    ModelContext model_base_context() const { return ModelContext(top(), pi_base_, q_base()); }
    ModelContext model_top_context() const { return ModelContext(top()); }
    SymbolicContext symbolic_base_context(std::optional<std::int64_t> precision = std::nullopt) const {
        require_symbolic();
        return SymbolicContext(top(), q_base(), e_, precision);
    }
    SymbolicContext symbolic_top_context(std::optional<std::int64_t> precision = std::nullopt) const {
        require_symbolic();
        return SymbolicContext(top(), q_top(), 1, precision);
    }

    /// The maximal subextension unramified over K, in the model sharing L's
    /// unramified polynomial and K's Eisenstein polynomial.
    NumberField unramified_part() const {
        return NumberField::make(top().p(), top().f(), base().e(), top().description().unramified_minpoly,
                                 base().description().eisenstein_minpoly);
    }

    void require_tame() const {
        if (!is_tame()) throw InvalidInput("wildly ramified extension (p divides e)");
    }
    void require_symbolic() const {
        if (!symbolic_route_available()) throw InvalidInput("pi_K is not pi_L^e in these models");
    }

private:
    FieldEmbedding emb_;
    int e_ = 1, f_ = 1;
    FieldElement pi_base_;
};

/// gamma on the generators of V^A (tag src) with values in V^B (tag dst),
/// determined by gamma(l_i^A) = l_{i/f}^B when f | i and 0 otherwise.
/// Images are solved in increasing i by isolating the leading generator of
/// the source expansion. With keep set, every target generator of another
/// index is sent to zero along the way (a ring map, so the recursion stays
/// valid).
template <class Ctx>
class GammaSolver {
public:
    using C = typename Ctx::Coeff;
    using P = GradedPoly<C>;

    GammaSolver(Ctx source, Ctx target, int f, Basis basis, char src = 'A', char dst = 'B',
                std::optional<int> keep = std::nullopt)
        : a_(std::move(source)), b_(std::move(target)), f_(f), basis_(basis), src_(src), dst_(dst), keep_(keep) {
        if (f < 1) throw InvalidInput("residue degree must be positive");
        images_.push_back(P::constant(a_.one()));
    }

    Basis basis() const { return basis_; }
    char source_tag() const { return src_; }
    char target_tag() const { return dst_; }
    const Ctx& source_context() const { return a_; }
    const Ctx& target_context() const { return b_; }

    /// gamma of the i-th source generator.
    const P& image(int i) {
        if (i < 0) throw InvalidInput("generator index must be nonnegative");
        while (static_cast<int>(images_.size()) <= i) solve_next();
        return images_[static_cast<std::size_t>(i)];
    }

    /// l_{i/f}^B when f | i, else 0.
    P target(int i) const {
        if (i % f_ != 0) return P();
        return specialize(log_expansion(i / f_, b_, family_of(basis_), dst_));
    }

    /// gamma applied to a polynomial in the source generators.
    P apply(const P& x) {
        int top = 0;
        for (const auto& [m, c] : x.terms())
            for (const auto& [var, e] : m.factors())
                if (is_source(var)) top = std::max(top, var.index);
        image(top);
        return x.substitute([&](const Variable& var) -> std::optional<P> {
            if (is_source(var)) return images_[static_cast<std::size_t>(var.index)];
            return std::nullopt;
        });
    }

    /// gamma(l_i^A) == target(i).
    bool log_identity_holds(int i) {
        return apply(log_expansion(i, a_, family_of(basis_), src_)) == target(i);
    }

    bool is_source(const Variable& var) const { return var.family == family_of(basis_) && var.tag == src_; }

private:
    void solve_next() {
        const int k = static_cast<int>(images_.size());
        const Family fam = family_of(basis_);
        const Monomial lead = Monomial::of(Variable{fam, src_, k});
        const P rest = log_expansion(k, a_, fam, src_).filter([&](const Monomial& m, const C&) { return !(m == lead); });
        const C scale = basis_ == Basis::Araki ? pi_of_height(k, a_) : a_.pi();
        images_.push_back(specialize((target(k) - apply(rest)).scaled(scale)));
    }

    P specialize(const P& p) const {
        if (!keep_) return p;
        return p.filter([&](const Monomial& m, const C&) {
            for (const auto& [var, e] : m.factors())
                if (var.tag == dst_ && var.family == family_of(basis_) && var.index != *keep_) return false;
            return true;
        });
    }

    Ctx a_, b_;
    int f_;
    Basis basis_;
    char src_, dst_;
    std::optional<int> keep_;
    std::vector<P> images_;
};

// Closed forms for a totally ramified extension; a is the source context
// (pi = pi_K, q) and b the target context (pi = pi_L, same q).

template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_V1(const Ctx& a, const Ctx& b) {
    return GradedPoly<typename Ctx::Coeff>::variable(V(1, 'B'), a.pi() * b.inverse(b.pi()));
}

template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_v1(const Ctx& a, const Ctx& b) {
    return GradedPoly<typename Ctx::Coeff>::variable(v(1, 'B'), pi_of_height(1, a) * b.inverse(pi_of_height(1, b)));
}

template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_V2(const Ctx& a, const Ctx& b) {
    using P = GradedPoly<typename Ctx::Coeff>;
    const std::int64_t q = a.q();
    const auto inv_pb = b.inverse(b.pi());
    P r = P::variable(V(2, 'B'), a.pi() * inv_pb);
    r.add_term(Monomial::of(V(1, 'B'), q + 1),
               a.pi() * inv_pb * inv_pb - a.pi_power(q) * b.inverse(b.pi_power(q + 1)));
    return r;
}

template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_v2_with(const Ctx& a, const Ctx& b, const typename Ctx::Coeff& lambda) {
    using P = GradedPoly<typename Ctx::Coeff>;
    const std::int64_t q = a.q();
    const auto ratio2 = pi_of_height(2, a) * b.inverse(pi_of_height(2, b));
    P r = P::variable(v(2, 'B'), ratio2);
    r.add_term(Monomial::of(v(1, 'B'), q + 1), b.inverse(pi_of_height(1, b)) * (ratio2 - lambda));
    return r;
}

/// gamma(v_2) with the v_1^{q+1} coefficient (1/Pi_B(1)) (Pi_A(2)/Pi_B(2) - lambda);
/// lambda = (Pi_A(1)/Pi_B(1))^q solves the log identity.
template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_v2(const Ctx& a, const Ctx& b) {
    const auto ratio1 = pi_of_height(1, a) * b.inverse(pi_of_height(1, b));
    return closed_gamma_v2_with(a, b, coeff_pow(ratio1, a.q()));
}

/// The same shape with lambda = 1.
template <class Ctx>
GradedPoly<typename Ctx::Coeff> closed_gamma_v2_unit_variant(const Ctx& a, const Ctx& b) {
    return closed_gamma_v2_with(a, b, a.one());
}

/// gamma(V_i) = V_{i/f} when f | i, else 0; unramified extensions.
template <class C>
GradedPoly<C> closed_gamma_unramified(int i, int f, const C& one, Family family = Family::HazewinkelV) {
    if (i % f != 0) return GradedPoly<C>();
    return GradedPoly<C>::variable(Variable{family, 'B', i / f}, one);
}

/// pi_K^{-1} gamma(V_j^A) - pi_L^{-1} V_j^B.
template <class Ctx>
GradedPoly<typename Ctx::Coeff> leading_term_residual(int j, GammaSolver<Ctx>& solver) {
    using P = GradedPoly<typename Ctx::Coeff>;
    if (solver.basis() != Basis::Hazewinkel) throw InvalidInput("the residual is stated for Hazewinkel generators");
    const auto& a = solver.source_context();
    const auto& b = solver.target_context();
    return solver.image(j).scaled(a.inverse(a.pi())) - P::variable(V(j, solver.target_tag()), b.inverse(b.pi()));
}

/// Every term contains some target generator of index < j.
template <class C>
bool in_lower_generator_ideal(const GradedPoly<C>& p, int j, Family family, char tag) {
    for (const auto& [m, c] : p.terms()) {
        bool hit = false;
        for (const auto& [var, e] : m.factors()) hit = hit || (var.family == family && var.tag == tag && var.index < j);
        if (!hit) return false;
    }
    return true;
}

inline Monomial rename_tag(const Monomial& m, char from, char to) {
    std::vector<Monomial::Factor> f;
    for (const auto& [var, e] : m.factors()) f.emplace_back(Variable{var.family, var.tag == from ? to : var.tag, var.index}, e);
    return Monomial(std::move(f));
}

/// leading_monomial(gamma(x)) is the target renaming of leading_monomial(x).
template <class Ctx>
bool leading_monomial_preserved(const GradedPoly<typename Ctx::Coeff>& x, GammaSolver<Ctx>& solver) {
    if (x.is_zero()) throw InvalidInput("leading monomial of the zero polynomial");
    const auto image = solver.apply(x);
    if (image.is_zero()) return false;
    return image.leading_monomial() == rename_tag(x.leading_monomial(), solver.source_tag(), solver.target_tag());
}

/// Monomials in the generators of one family and tag, indices <= max_index,
/// of exact degree d (degrees 2(q^i - 1)), in increasing order.
inline std::vector<Monomial> monomials_of_degree(std::int64_t d, std::int64_t q, Family family, char tag, int max_index) {
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    auto rec = [&](auto&& self, int index, std::int64_t rest) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        if (index == 0) return;
        const std::int64_t dv = degree(Variable{family, tag, index}, q);
        for (std::int64_t k = rest / dv; k >= 0; --k) {
            if (k > 0) cur.emplace_back(Variable{family, tag, index}, k);
            self(self, index - 1, rest - k * dv);
            if (k > 0) cur.pop_back();
        }
    };
    if (d >= 0) rec(rec, max_index, d);
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

/// Largest generator index whose degree is at most d.
inline int max_index_for_degree(std::int64_t d, std::int64_t q) {
    int n = 0;
    while (2 * (checked_pow(q, n + 1) - 1) <= d) ++n;
    return n;
}

/// Minimal a >= 0 with pi_L^a x in the B-span of gamma of the source
/// monomials of the same degree; x homogeneous in the target generators.
/// Solved over L in the finite graded piece.
template <class Ctx>
std::int64_t denominator_exponent(const GradedPoly<typename Ctx::Coeff>& x, GammaSolver<Ctx>& solver,
                                  std::int64_t degree_bound) {
    using C = typename Ctx::Coeff;
    if (x.is_zero()) return 0;
    const auto& a = solver.source_context();
    const auto& b = solver.target_context();
    const auto d = x.homogeneous_degree(b.q());
    if (!d) throw InvalidInput("denominator_exponent needs a homogeneous input");
    if (*d > degree_bound) throw InvalidInput("input degree exceeds the configured bound");
    const Family fam = family_of(solver.basis());
    const auto sources = monomials_of_degree(*d, a.q(), fam, solver.source_tag(), max_index_for_degree(*d, a.q()));
    std::vector<GradedPoly<C>> images;
    std::vector<Monomial> rows;
    for (const auto& m : sources) {
        images.push_back(solver.apply(GradedPoly<C>::term(m, a.one())));
        for (const auto& [mm, c] : images.back().terms()) rows.push_back(mm);
    }
    for (const auto& [mm, c] : x.terms()) rows.push_back(mm);
    std::sort(rows.begin(), rows.end(), MonomialLess{});
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    Matrix<C> M(rows.size(), sources.size(), b.zero());
    std::vector<C> rhs(rows.size(), b.zero());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < sources.size(); ++c)
            if (const C* v = images[c].coefficient(rows[r])) M(r, c) = *v;
        if (const C* v = x.coefficient(rows[r])) rhs[r] = *v;
    }
    const auto sol = solve(M, rhs, b.zero());
    if (!sol) throw MathAssertion("input is not in the L-span of the image in its degree");
    std::int64_t worst = 0;
    for (const auto& c : *sol) {
        const auto val = b.valuation(c);
        if (val) worst = std::min(worst, *val);
    }
    return -worst;
}

struct KernelCheckDegree {
    std::int64_t degree = 0;
    std::size_t monomials = 0, killed = 0, rank = 0;
    bool ok = false;
};

/// For an unramified extension, in each degree up to the bound: monomials
/// involving some V_i with f not dividing i map to zero, and the images of
/// the others are linearly independent.
template <class Ctx>
std::vector<KernelCheckDegree> unramified_kernel_check(GammaSolver<Ctx>& solver, int f, std::int64_t degree_bound) {
    using C = typename Ctx::Coeff;
    const auto& a = solver.source_context();
    const auto& b = solver.target_context();
    const Family fam = family_of(solver.basis());
    std::vector<KernelCheckDegree> out;
    for (std::int64_t d = 2; d <= degree_bound; d += 2) {
        const auto mons = monomials_of_degree(d, a.q(), fam, solver.source_tag(), max_index_for_degree(d, a.q()));
        if (mons.empty()) continue;
        KernelCheckDegree rec;
        rec.degree = d;
        rec.monomials = mons.size();
        bool ok = true;
        std::vector<GradedPoly<C>> good;
        for (const auto& m : mons) {
            bool bad = false;
            for (const auto& [var, e] : m.factors()) bad = bad || var.index % f != 0;
            auto img = solver.apply(GradedPoly<C>::term(m, a.one()));
            if (bad) {
                ++rec.killed;
                ok = ok && img.is_zero();
            } else {
                good.push_back(std::move(img));
            }
        }
        std::vector<Monomial> rows;
        for (const auto& g : good)
            for (const auto& [mm, c] : g.terms()) rows.push_back(mm);
        std::sort(rows.begin(), rows.end(), MonomialLess{});
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        Matrix<C> M(rows.size(), good.size(), b.zero());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < good.size(); ++c)
                if (const C* v = good[c].coefficient(rows[r])) M(r, c) = *v;
        rec.rank = good.empty() ? 0 : rank(M);
        rec.ok = ok && rec.rank == good.size();
        out.push_back(rec);
    }
    return out;
}

/// gamma for a general tower K in K_nr in L, composed through the maximal
/// unramified subextension. Stage coefficients are carried into L by lift.
template <class Ctx>
class TowerGamma {
public:
    using C = typename Ctx::Coeff;
    using P = GradedPoly<C>;

    TowerGamma(GammaSolver<Ctx> unramified, GammaSolver<Ctx> ramified, std::function<C(const C&)> lift)
        : first_(std::move(unramified)), second_(std::move(ramified)), lift_(std::move(lift)) {}

    P image(int i) {
        const P mid = first_.image(i).map_coefficients(lift_);
        return second_.apply(mid);
    }

    GammaSolver<Ctx>& unramified_stage() { return first_; }
    GammaSolver<Ctx>& ramified_stage() { return second_; }

private:
    GammaSolver<Ctx> first_, second_;
    std::function<C(const C&)> lift_;
};

/// Direct solver for K in L on the model route.
inline GammaSolver<ModelContext> model_gamma(const Extension& ext, Basis basis) {
    return GammaSolver<ModelContext>(ext.model_base_context(), ext.model_top_context(), ext.f(), basis);
}

/// Direct solver for K in L in Q(t), t = pi_L; needs pi_K = pi_L^e.
inline GammaSolver<SymbolicContext> symbolic_gamma(const Extension& ext, Basis basis,
                                                   std::optional<std::int64_t> precision = std::nullopt,
                                                   std::optional<int> keep = std::nullopt) {
    return GammaSolver<SymbolicContext>(ext.symbolic_base_context(precision), ext.symbolic_top_context(precision),
                                        ext.f(), basis, 'A', 'B', keep);
}

inline TowerGamma<ModelContext> model_tower_gamma(const Extension& ext, Basis basis) {
    const NumberField mid = ext.unramified_part();
    const Extension lower = Extension::make(ext.base(), mid);
    const Extension upper = Extension::make(mid, ext.top());
    GammaSolver<ModelContext> s1(lower.model_base_context(), lower.model_top_context(), lower.f(), basis, 'A', 'N');
    GammaSolver<ModelContext> s2(upper.model_base_context(), upper.model_top_context(), 1, basis, 'N', 'B');
    const FieldEmbedding emb = upper.embedding();
    return TowerGamma<ModelContext>(std::move(s1), std::move(s2), [emb](const FieldElement& c) { return emb(c); });
}

inline TowerGamma<SymbolicContext> symbolic_tower_gamma(const Extension& ext, Basis basis) {
    const NumberField mid = ext.unramified_part();
    const Extension lower = Extension::make(ext.base(), mid);
    const Extension upper = Extension::make(mid, ext.top());
    GammaSolver<SymbolicContext> s1(lower.symbolic_base_context(), lower.symbolic_top_context(), lower.f(), basis, 'A', 'N');
    GammaSolver<SymbolicContext> s2(upper.symbolic_base_context(), upper.symbolic_top_context(), 1, basis, 'N', 'B');
    const std::int64_t r = upper.e();
    return TowerGamma<SymbolicContext>(std::move(s1), std::move(s2),
                                       [r](const PiFraction& c) { return c.substitute_power(r); });
}

}  // namespace fmlab
