#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmlab/basechange.hpp"
#include "fmlab/finite_field.hpp"
#include "fmlab/graded_poly.hpp"

namespace fmlab {

using FFPoly = GradedPoly<FiniteFieldElement>;

/// F_q[v_h^{+-1}][t_1..t_M] modulo t_i v_h^{q^i} - v_h t_i^{q^h}.
struct ThickenedPresentation {
    FiniteField field;
    std::int64_t q = 0;
    int h = 0, M = 0;
    std::vector<FFPoly> relations;  // relations[i - 1] for t_i

    bool relations_homogeneous() const {
        for (const auto& r : relations)
            if (!r.homogeneous_degree(q)) return false;
        return true;
    }
};

inline ThickenedPresentation sigma_presentation(const NumberField& A, int h, int M) {
    if (h < 1 || M < 0) throw InvalidInput("sigma_presentation needs h >= 1 and M >= 0");
    ThickenedPresentation s;
    s.field = A.residue_field();
    s.q = A.q();
    s.h = h;
    s.M = M;
    const auto one = FiniteFieldElement::one(s.field);
    const std::int64_t qh = checked_pow(s.q, h);
    for (int i = 1; i <= M; ++i) {
        FFPoly r;
        r.add_term(Monomial::of(t(i)) * Monomial::of(v(h), checked_pow(s.q, i)), one);
        r.add_term(Monomial::of(v(h)) * Monomial::of(t(i), qh), -one);
        s.relations.push_back(std::move(r));
    }
    return s;
}

/// t_i^exponent = coefficient * t_i, or t_i = 0 when killed.
struct GeneratorRelation {
    int index = 0;
    bool killed = false;
    std::int64_t exponent = 0;
    FiniteFieldElement coefficient;
};

enum class QuotientKind { Full, Tame, Unramified };

inline const char* quotient_name(QuotientKind k) {
    switch (k) {
        case QuotientKind::Full: return "full";
        case QuotientKind::Tame: return "tame";
        case QuotientKind::Unramified: return "unramified";
    }
    return "?";
}

/// A quotient of F_{q^h}[t_1, t_2, ...] cut off at t_M, with t indices and
/// the exponents q^i taken over the source ring's residue cardinality q.
struct StabilizerPresentation {
    FiniteField field;
    std::int64_t q = 0;
    int h = 0, M = 0;
    QuotientKind kind = QuotientKind::Full;
    std::optional<FiniteFieldElement> c;
    std::vector<GeneratorRelation> relations;  // relations[i - 1] for t_i
    /// Coproducts are supported in degrees k < coproduct_bound (= e h with e
    /// the absolute ramification of the source ring).
    int coproduct_bound = 0;

    const GeneratorRelation& relation(int i) const {
        if (i < 1 || i > M) throw InvalidInput("generator index outside 1..M");
        return relations[static_cast<std::size_t>(i - 1)];
    }
    bool survives(int i) const { return i == 0 || !relation(i).killed; }
    std::vector<int> generators() const {
        std::vector<int> g;
        for (int i = 1; i <= M; ++i)
            if (survives(i)) g.push_back(i);
        return g;
    }
};

inline StabilizerPresentation full_stabilizer(const FiniteField& field, std::int64_t q, int h, int M, int absolute_e) {
    StabilizerPresentation s;
    s.field = field;
    s.q = q;
    s.h = h;
    s.M = M;
    s.kind = QuotientKind::Full;
    s.coproduct_bound = absolute_e * h;
    for (int i = 1; i <= M; ++i)
        s.relations.push_back({i, false, checked_pow(q, h), FiniteFieldElement::one(field)});
    return s;
}

/// theta(t_i) = t_{image[i]} or 0; both presentations share indices.
struct ThetaMap {
    StabilizerPresentation source, target;
    std::vector<std::optional<int>> image;  // image[i - 1]
    std::optional<FiniteFieldElement> epsilon_alpha;
    Integer root_order = 1;
};

inline int default_generator_count(int e, int h) { return 2 * e * h; }

/// Totally and tamely ramified L/K of degree e dividing h.
inline ThetaMap theta_tame(const Extension& ext, int h, std::optional<int> M_opt = std::nullopt) {
    ext.require_tame();
    if (!ext.is_totally_ramified()) throw InvalidInput("theta_tame needs a totally ramified extension");
    const int e = ext.e();
    if (h < 1 || h % e != 0) throw InvalidInput("theta_tame needs h divisible by e");
    const int M = M_opt.value_or(default_generator_count(e, h));
    const std::int64_t q = ext.q_base();
    const FiniteField Fq = ext.top().residue_field();
    const FiniteField Fqh = FiniteField::make(Fq.characteristic(), Fq.degree() * h);
    const auto into = FiniteFieldEmbedding::make(Fq, Fqh);
    const FiniteFieldElement eps = into(ext.alpha().residue());
    const Integer qh = Integer(static_cast<unsigned long>(checked_pow(q, h)));
    const std::int64_t Q = checked_pow(q, h / e);
    const Integer m = (qh - 1) / Integer(static_cast<unsigned long>(Q - 1));

    ThetaMap th;
    th.source = full_stabilizer(Fqh, q, h, M, ext.base().e());
    th.epsilon_alpha = eps;
    th.root_order = m;
    const FiniteFieldElement c = primitive_root_of(eps, m);
    StabilizerPresentation& tg = th.target;
    tg.field = Fqh;
    tg.q = q;
    tg.h = h;
    tg.M = M;
    tg.kind = QuotientKind::Tame;
    tg.c = c;
    tg.coproduct_bound = ext.top().e() * (h / e);
    for (int i = 1; i <= M; ++i) {
        tg.relations.push_back({i, false, Q, c.pow(ipow(q, static_cast<std::uint64_t>(i)) - 1)});
        th.image.emplace_back(i);
    }
    return th;
}

/// Unramified L/K of degree f dividing h.
inline ThetaMap theta_unramified(const Extension& ext, int h, std::optional<int> M_opt = std::nullopt) {
    if (!ext.is_unramified()) throw InvalidInput("theta_unramified needs an unramified extension");
    const int f = ext.f();
    if (h < 1 || h % f != 0) throw InvalidInput("theta_unramified needs h divisible by f");
    const int M = M_opt.value_or(default_generator_count(1, h));
    const std::int64_t q = ext.q_base();
    const FiniteField Fq = ext.base().residue_field();
    const FiniteField Fqh = FiniteField::make(Fq.characteristic(), Fq.degree() * h);
    ThetaMap th;
    th.source = full_stabilizer(Fqh, q, h, M, ext.base().e());
    StabilizerPresentation& tg = th.target;
    tg.field = Fqh;
    tg.q = q;
    tg.h = h;
    tg.M = M;
    tg.kind = QuotientKind::Unramified;
    tg.coproduct_bound = ext.top().e() * h;
    const auto one = FiniteFieldElement::one(Fqh);
    for (int i = 1; i <= M; ++i) {
        const bool keep = i % f == 0;
        tg.relations.push_back({i, !keep, checked_pow(q, h), one});
        th.image.push_back(keep ? std::optional<int>(i) : std::nullopt);
    }
    return th;
}

/// Tame relations t^Q = d_i t iterated: t^{Q^k} = d_{i,k} t with
/// d_{i,k+1} = d_{i,k}^Q d_i. Requires d_{i,e} = 1, so that t^{q^h} = t, and
/// agreement with the closed exponent c^{(q^i - 1) m}.
inline bool verify_theta_well_defined(const StabilizerPresentation& pres) {
    if (pres.kind != QuotientKind::Tame) {
        for (const auto& r : pres.relations)
            if (!r.killed && (r.exponent != checked_pow(pres.q, pres.h) || !r.coefficient.is_one())) return false;
        return true;
    }
    if (!pres.c) return false;
    const std::int64_t qh = checked_pow(pres.q, pres.h);
    for (const auto& r : pres.relations) {
        const std::int64_t Q = r.exponent;
        // Q^e = q^h determines e.
        int e = 0;
        for (std::int64_t acc = 1; acc < qh; acc *= Q) ++e;
        FiniteFieldElement d = r.coefficient;
        for (int k = 1; k < e; ++k) d = d.pow(static_cast<std::uint64_t>(Q)) * r.coefficient;
        if (!d.is_one()) return false;
        const Integer m = (Integer(static_cast<unsigned long>(qh)) - 1) / Integer(static_cast<unsigned long>(Q - 1));
        const Integer di = ipow(pres.q, static_cast<std::uint64_t>(r.index)) - 1;
        if (!(pres.c->pow(di * m) == d)) return false;
        if (!(pres.c->pow(di) == r.coefficient)) return false;
    }
    return true;
}

/// sum_{i=0}^{k} t_i (x) t_{k-i}^{q^i} over the generators the presentation
/// keeps, with t_0 = 1; tags name the two tensor factors.
inline FFPoly coproduct_low(int k, const StabilizerPresentation& pres, char left = 'L', char right = 'R') {
    if (k < 1 || k > pres.M) throw InvalidInput("coproduct index outside 1..M");
    if (k >= pres.coproduct_bound)
        throw InvalidInput("coproduct is only available in degrees k < e h (k = " + std::to_string(k) +
                           ", bound " + std::to_string(pres.coproduct_bound) + ")");
    const auto one = FiniteFieldElement::one(pres.field);
    FFPoly r;
    if (!pres.survives(k)) return r;
    for (int i = 0; i <= k; ++i) {
        if (!pres.survives(i) || !pres.survives(k - i)) continue;
        Monomial m;
        if (i > 0) m = m * Monomial::of(t(i, left));
        if (k - i > 0) m = m * Monomial::of(t(k - i, right), checked_pow(pres.q, i));
        r.add_term(m, one);
    }
    return r;
}

/// Relabels the t generators of one tag.
inline FFPoly retag(const FFPoly& p, char from, char to) {
    FFPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(rename_tag(m, from, to), c);
    return r;
}

/// (Delta (x) id) Delta(t_k) == (id (x) Delta) Delta(t_k).
inline bool coassociative(int k, const StabilizerPresentation& pres) {
    const FFPoly d = coproduct_low(k, pres, 'L', 'R');
    const FFPoly lhs = d.substitute([&](const Variable& var) -> std::optional<FFPoly> {
        if (var.family == Family::T && var.tag == 'L') return coproduct_low(var.index, pres, 'L', 'M');
        if (var.family == Family::T && var.tag == 'R') return FFPoly::variable(t(var.index, 'R'), FiniteFieldElement::one(pres.field));
        return std::nullopt;
    });
    const FFPoly rhs = d.substitute([&](const Variable& var) -> std::optional<FFPoly> {
        if (var.family == Family::T && var.tag == 'R') return coproduct_low(var.index, pres, 'M', 'R');
        return std::nullopt;
    });
    return lhs == rhs;
}

inline FFPoly apply_theta(const FFPoly& p, const ThetaMap& th) {
    const auto one = FiniteFieldElement::one(th.target.field);
    return p.substitute([&](const Variable& var) -> std::optional<FFPoly> {
        if (var.family != Family::T) return std::nullopt;
        const auto& im = th.image.at(static_cast<std::size_t>(var.index - 1));
        if (!im) return FFPoly();
        return FFPoly::variable(t(*im, var.tag), one);
    });
}

/// (theta (x) theta) Delta(t_k) == Delta(theta(t_k)).
inline bool theta_is_coalgebra_map(int k, const ThetaMap& th) {
    const FFPoly lhs = apply_theta(coproduct_low(k, th.source), th);
    const auto& im = th.image.at(static_cast<std::size_t>(k - 1));
    const FFPoly rhs = im ? coproduct_low(*im, th.target) : FFPoly();
    return lhs == rhs;
}

/// Normal form modulo the generator relations of pres, applied in every
/// tensor factor: t^n with n >= E becomes d^s t^{n - s(E-1)}, s = floor((n-1)/(E-1)).
inline FFPoly normal_form(const FFPoly& p, const StabilizerPresentation& pres) {
    FFPoly out;
    for (const auto& [m, c] : p.terms()) {
        FiniteFieldElement coeff = c;
        std::vector<Monomial::Factor> f;
        bool zero = false;
        for (const auto& [var, n] : m.factors()) {
            if (var.family != Family::T) {
                f.emplace_back(var, n);
                continue;
            }
            const auto& rel = pres.relation(var.index);
            if (rel.killed) {
                zero = true;
                break;
            }
            std::int64_t e = n;
            if (n >= rel.exponent) {
                const std::int64_t s = (n - 1) / (rel.exponent - 1);
                e = n - s * (rel.exponent - 1);
                coeff *= rel.coefficient.pow(static_cast<std::uint64_t>(s));
            }
            f.emplace_back(var, e);
        }
        if (zero) continue;
        out.add_term(Monomial(std::move(f)), coeff);
    }
    return out;
}

/// The relations generate a Hopf ideal: Delta(t_i)^E - d_i Delta(t_i) has
/// normal form zero.
inline bool relations_are_hopf_ideal(int i, const StabilizerPresentation& pres) {
    const auto& rel = pres.relation(i);
    if (rel.killed) return true;
    const FFPoly d = coproduct_low(i, pres);
    return normal_form(d.pow(rel.exponent) - d.scaled(rel.coefficient), pres).is_zero();
}

/// Residues of the two closed forms for kappa(v_{jn}^A) and their common
/// exponent (q^{jn} - 1)/(q^j - 1), for L/K totally ramified of degree n.
struct KappaConstant {
    FiniteFieldElement from_pi_values;  // eps((pi_A - pi_A^{q^{jn}}) / prod_m (pi_B - pi_B^{q^{mj}}))
    FiniteFieldElement from_alpha;      // eps(pi_A / pi_B^n)
    Integer exponent;
    bool agree = false;
};

inline KappaConstant kappa_constant(const Extension& ext, int j) {
    ext.require_tame();
    if (!ext.is_totally_ramified()) throw InvalidInput("kappa needs a totally ramified extension");
    const int n = ext.e();
    if (n < 2) throw InvalidInput("kappa needs an extension of degree n > 1");
    if (j < 1) throw InvalidInput("kappa needs j >= 1");
    const ModelContext a = ext.model_base_context(), b = ext.model_top_context();
    FieldElement den = b.one();
    for (int m = 1; m <= n; ++m) den = den * pi_of_height(m * j, b);
    KappaConstant k;
    k.from_pi_values = (pi_of_height(j * n, a) / den).residue();
    k.from_alpha = ext.alpha().residue();
    const std::int64_t q = ext.q_base();
    k.exponent = (Integer(static_cast<unsigned long>(checked_pow(q, j * n))) - 1) /
                 (Integer(static_cast<unsigned long>(checked_pow(q, j))) - 1);
    k.agree = k.from_pi_values == k.from_alpha;
    return k;
}

/// kappa(v_h^A) in F_q[v_j^B]: gamma(v_h^A) with every v_i^B (i != j) sent
/// to zero, reduced modulo pi_B. Araki generators, model route.
inline FFPoly kappa_image(const Extension& ext, int h, int j) {
    GammaSolver<ModelContext> s(ext.model_base_context(), ext.model_top_context(), ext.f(), Basis::Araki, 'A', 'B', j);
    const auto& img = s.image(h);
    assert_integral(img, s.target_context(), "gamma(v_" + std::to_string(h) + ")");
    return reduce_mod_pi(img, s.target_context());
}

/// Substitutes v_h^A -> kappa(v_h^A) = e v^m (v = v_{h/n}^B) into
/// t_i (v_h^A)^{q^i} - v_h^A t_i^{q^h} and reduces with the target relation
/// t_i v^{q^i} = v t_i^{Q}, Q = q^{h/n}; the result must vanish.
inline bool kappa_relation_consistent(const Extension& ext, int h, int i) {
    const int n = ext.e();
    if (h % n != 0) throw InvalidInput("h must be divisible by the degree");
    const int j = h / n;
    const FFPoly kappa = kappa_image(ext, h, j);
    const std::int64_t q = ext.q_base();
    const std::int64_t Q = checked_pow(q, j), qi = checked_pow(q, i);
    const FiniteField Fq = ext.top().residue_field();
    const auto one = FiniteFieldElement::one(Fq);
    const Variable vb = v(j, 'B');
    const Variable tb = t(i, 'B');
    // t^n -> v^{s(q^i - 1)} t^{n - s(Q - 1)} with v invertible.
    auto reduce = [&](const FFPoly& p) {
        FFPoly out;
        for (const auto& [m, c] : p.terms()) {
            const std::int64_t nt = m.exponent(tb), nv = m.exponent(vb);
            std::int64_t s = nt >= Q ? (nt - 1) / (Q - 1) : 0;
            Monomial mm = Monomial::of(vb, nv + s * (qi - 1));
            if (nt - s * (Q - 1) > 0) mm = mm * Monomial::of(tb, nt - s * (Q - 1));
            out.add_term(mm, c);
        }
        return out;
    };
    const FFPoly ti = FFPoly::variable(tb, one);
    const FFPoly rel = FFPoly::add_mixed(FFPoly::mul_mixed(ti, kappa.pow(qi)),
                                         -FFPoly::mul_mixed(kappa, ti.pow(checked_pow(q, h))));
    return reduce(rel).is_zero();
}

}  // namespace fmlab
