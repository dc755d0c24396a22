#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmlab/basechange.hpp"
#include "fmlab/formal_module.hpp"
#include "fmlab/generators.hpp"
#include "fmlab/json_io.hpp"
#include "fmlab/stabilizer.hpp"

namespace fmlab {

inline constexpr const char* kVersion = "1.0.0";

/// Caps on series X-degree (N), stabilizer generator count (M) and
/// polynomial degree for per-degree linear algebra (D). Unset fields take
/// per-computation defaults.
struct TruncationBounds {
    std::optional<int> N, M;
    std::optional<std::int64_t> D;
};

/// "N" or a comma list of "N=..", "M=..", "D=..".
inline TruncationBounds parse_truncation(const std::string& text) {
    TruncationBounds b;
    auto number = [&](const std::string& s) -> std::int64_t {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size() || v < 0) throw InvalidInput("");
            return v;
        } catch (const std::exception&) {
            throw InvalidInput("bad truncation value '" + s + "'");
        }
    };
    if (text.find('=') == std::string::npos) {
        b.N = static_cast<int>(number(text));
        return b;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidInput("bad truncation item '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::int64_t val = number(item.substr(eq + 1));
        if (key == "N") b.N = static_cast<int>(val);
        else if (key == "M") b.M = static_cast<int>(val);
        else if (key == "D") b.D = val;
        else throw InvalidInput("unknown truncation key '" + key + "'");
    }
    return b;
}

struct RunConfig {
    std::string subcommand;
    std::int64_t p = 2;
    int f = 1, e = 1;
    std::optional<std::string> field;  // inline JSON or a path
    std::optional<std::string> ext;
    std::string basis = "hazewinkel";
    int h = 2;
    int max_i = 3;
    int m = 2;                         // variable count for w
    std::optional<std::string> seq;    // index sequence for w, e.g. "1,2"
    std::optional<std::int64_t> target_q;
    std::string quotient;              // tame | unramified, inferred when empty
    std::string route = "auto";        // auto | model | symbolic
    TruncationBounds truncation;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 1;
    int samples = 20;
};

struct RunResult {
    int exit_code = 0;
    std::string document;
    std::string error;
};

namespace cli_detail {

inline NumberField field_of(const RunConfig& c) {
    if (c.field) return field_from_json(load_json_argument(*c.field));
    return NumberField::make(c.p, c.f, c.e);
}

/// --ext, or the tower (p,1,1) in (p,f,e).
inline Extension extension_of(const RunConfig& c) {
    if (c.ext) return extension_from_json(load_json_argument(*c.ext));
    return Extension::make(NumberField::make(c.p, 1, 1), NumberField::make(c.p, c.f, c.e));
}

inline IndexSequence parse_sequence(const std::string& s) {
    IndexSequence I;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const int k = std::stoi(item);
            if (k < 1) throw InvalidInput("");
            I.push_back(k);
        } catch (const std::exception&) {
            throw InvalidInput("bad index sequence '" + s + "'");
        }
    }
    return I;
}

inline Json config_json(const RunConfig& c) {
    Json j{{"basis", c.basis}, {"h", c.h}, {"max_i", c.max_i}, {"route", c.route}, {"seed", c.seed}};
    if (c.truncation.N) j["N"] = *c.truncation.N;
    if (c.truncation.M) j["M"] = *c.truncation.M;
    if (c.truncation.D) j["D"] = *c.truncation.D;
    return j;
}

inline Json provenance(const RunConfig& c, const std::string& computation) {
    return Json{{"tool", "fmlab"}, {"version", kVersion}, {"subcommand", c.subcommand},
                {"computation", computation}, {"parameters", config_json(c)}};
}

inline void require_positive(int v, const char* what) {
    if (v < 1) throw InvalidInput(std::string(what) + " must be positive");
}

/// Small nonzero rational a/b with |a| <= 3, b in {1, 2}.
inline Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    int a = 0;
    while (a == 0) a = num(rng);
    Rational r(a, den(rng));
    r.canonicalize();
    return r;
}

inline FieldElement random_element(const NumberField& K, std::mt19937_64& rng) {
    std::vector<Rational> c;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int k = 0; k < K.degree(); ++k) c.push_back(k == 0 || coin(rng) ? random_rational(rng) : Rational(0));
    return FieldElement(K, std::move(c));
}

// --- log ---------------------------------------------------------------

inline Json run_log(const RunConfig& c) {
    require_positive(c.h, "--h");
    const NumberField K = field_of(c);
    const Basis b = basis_from_name(c.basis);
    const ModelContext ctx(K);
    const auto poly = log_expansion(c.h, ctx, family_of(b));
    return Json{{"provenance", provenance(c, std::string("logarithm coefficient l_h of the universal typical law in ") +
                                                 basis_name(b) + " generators")},
                {"field", to_json(K.description())},
                {"basis", basis_name(b)},
                {"h", c.h},
                {"expansion", poly_to_json(poly)}};
}

// --- w -----------------------------------------------------------------

inline Json run_w(const RunConfig& c, bool& ok) {
    require_positive(c.m, "--m");
    if (c.h < 0) throw InvalidInput("--h must be nonnegative");
    const NumberField K = field_of(c);
    const ModelContext ctx(K);
    const auto wi = w_int(c.h, c.m, ctx);
    Json table = Json::array();
    for (std::size_t j = 0; j < wi.size(); ++j)
        table.push_back(Json{{"j", j}, {"poly", poly_to_json(wi[j])}, {"symmetric", is_symmetric(wi[j], c.m)}});
    ok = true;
    for (const auto& t : table) ok = ok && t.at("symmetric").get<bool>();
    Json out{{"provenance", provenance(c, "integral symmetric polynomials w_j from power sums, and w_I for sequences")},
             {"field", to_json(K.description())},
             {"m", c.m},
             {"w_int", table}};
    if (c.seq) {
        const IndexSequence I = parse_sequence(*c.seq);
        WSequence<ModelContext> ws(c.m, ctx);
        const auto& wI = ws(I);
        const bool sym = is_symmetric(wI, c.m);
        const bool cong = ws.congruence_holds(I);
        ok = ok && sym && cong;
        out["w_seq"] = Json{{"sequence", I}, {"poly", poly_to_json(wI)}, {"symmetric", sym}, {"congruence_mod_pi", cong}};
    }
    out["ok"] = ok;
    return out;
}

// --- araki-verify --------------------------------------------------------

inline Json run_araki_verify(const RunConfig& c, bool& ok) {
    require_positive(c.h, "--h");
    const NumberField K = field_of(c);
    const bool symbolic = c.route != "model";
    Json rows = Json::array();
    ok = true;
    auto check = [&](const auto& ctx) {
        for (int h = 1; h <= c.h; ++h) {
            const bool a = verify_araki(h, ctx), z = verify_hazewinkel(h, ctx);
            const bool m = araki_congruent_to_hazewinkel(h, ctx);
            ok = ok && a && z && m;
            rows.push_back(Json{{"h", h}, {"araki_relation", a}, {"hazewinkel_relation", z}, {"agree_mod_pi", m}});
        }
    };
    if (symbolic) check(SymbolicContext(K));
    else check(ModelContext(K));
    return Json{{"provenance", provenance(c, "generator relations and the mod-pi agreement of Araki and Hazewinkel generators")},
                {"field", to_json(K.description())},
                {"route", symbolic ? "symbolic" : "model"},
                {"checks", rows},
                {"ok", ok}};
}

// --- gamma ---------------------------------------------------------------

inline bool use_symbolic(const RunConfig& c, const Extension& ext) {
    if (c.route != "auto" && c.route != "model" && c.route != "symbolic")
        throw InvalidInput("--route must be auto, model or symbolic");
    if (c.route == "model") return false;
    const bool available = ext.is_unramified() || ext.is_totally_ramified()
                               ? ext.symbolic_route_available()
                               : Extension::make(ext.unramified_part(), ext.top()).symbolic_route_available();
    if (c.route == "symbolic" && !available) throw InvalidInput("symbolic route needs pi_K = pi_L^e in these models");
    return available;
}

template <class Image>
Json image_table(int max_i, Image&& image) {
    Json rows = Json::array();
    for (int i = 1; i <= max_i; ++i) rows.push_back(Json{{"i", i}, {"image", poly_to_json(image(i))}});
    return rows;
}

inline Json run_gamma(const RunConfig& c) {
    require_positive(c.max_i, "--max-i");
    const Extension ext = extension_of(c);
    const Basis b = basis_from_name(c.basis);
    const bool sym = use_symbolic(c, ext);
    const bool direct = ext.is_unramified() || ext.is_totally_ramified();
    Json rows;
    if (direct && sym) {
        auto s = symbolic_gamma(ext, b);
        rows = image_table(c.max_i, [&](int i) { return s.image(i); });
    } else if (direct) {
        auto s = model_gamma(ext, b);
        rows = image_table(c.max_i, [&](int i) { return s.image(i); });
    } else if (sym) {
        auto s = symbolic_tower_gamma(ext, b);
        rows = image_table(c.max_i, [&](int i) { return s.image(i); });
    } else {
        auto s = model_tower_gamma(ext, b);
        rows = image_table(c.max_i, [&](int i) { return s.image(i); });
    }
    return Json{{"provenance", provenance(c, std::string("base change of the moduli ring on ") + basis_name(b) +
                                                 " generators, solved from the log identity")},
                {"extension", to_json(ext)},
                {"basis", basis_name(b)},
                {"route", sym ? "symbolic" : "model"},
                {"images", rows}};
}

// --- gamma-verify ----------------------------------------------------------

template <class Ctx>
Json verify_direct(GammaSolver<Ctx>& s, const Extension& ext, int max_i, std::optional<std::int64_t> D, bool& ok) {
    using P = GradedPoly<typename Ctx::Coeff>;
    Json out = Json::object();
    Json logs = Json::array();
    const auto& a = s.source_context();
    const auto& bb = s.target_context();
    for (int i = 1; i <= max_i; ++i) {
        const bool v = s.log_identity_holds(i);
        const bool integral = is_integral(s.image(i), bb);
        ok = ok && v && integral;
        logs.push_back(Json{{"i", i}, {"holds", v}, {"integral", integral}});
    }
    out["log_identity"] = logs;
    Json closed = Json::object();
    if (ext.is_unramified()) {
        bool all = true;
        for (int i = 1; i <= max_i; ++i)
            all = all && s.image(i) == closed_gamma_unramified(i, ext.f(), bb.one(), family_of(s.basis()));
        closed["unramified_table"] = all;
        ok = ok && all;
        const std::int64_t q = ext.q_base();
        Json kernel = Json::array();
        for (const auto& rec : unramified_kernel_check(s, ext.f(), D.value_or(2 * (checked_pow(q, 2) - 1)))) {
            ok = ok && rec.ok;
            kernel.push_back(Json{{"degree", rec.degree}, {"monomials", rec.monomials}, {"killed", rec.killed},
                                  {"rank", rec.rank}, {"ok", rec.ok}});
        }
        out["kernel_check"] = kernel;
    }
    if (ext.is_totally_ramified() && ext.e() > 1) {
        const int top = std::min(max_i, 2);
        if (s.basis() == Basis::Hazewinkel) {
            const bool v1 = s.image(1) == closed_gamma_V1(a, bb);
            closed["V1"] = v1;
            ok = ok && v1;
            if (top >= 2) {
                const bool v2 = s.image(2) == closed_gamma_V2(a, bb);
                closed["V2"] = v2;
                ok = ok && v2;
            }
            Json res = Json::array();
            for (int j = 1; j <= max_i; ++j) {
                const P r = leading_term_residual(j, s);
                const bool in = in_lower_generator_ideal(r, j, Family::HazewinkelV, s.target_tag());
                ok = ok && in;
                res.push_back(Json{{"j", j}, {"in_lower_ideal", in}});
            }
            out["leading_term_residual"] = res;
        } else {
            const bool v1 = s.image(1) == closed_gamma_v1(a, bb);
            closed["v1"] = v1;
            ok = ok && v1;
            if (top >= 2) {
                const bool v2 = s.image(2) == closed_gamma_v2(a, bb);
                closed["v2"] = v2;
                ok = ok && v2;
                // Informational: the shape with a unit in place of (Pi_A(1)/Pi_B(1))^q.
                closed["v2_unit_variant"] = s.image(2) == closed_gamma_v2_unit_variant(a, bb);
            }
        }
    }
    out["closed_forms"] = closed;
    return out;
}

inline Json run_gamma_verify(const RunConfig& c, bool& ok) {
    require_positive(c.max_i, "--max-i");
    const Extension ext = extension_of(c);
    const Basis b = basis_from_name(c.basis);
    const bool sym = use_symbolic(c, ext);
    ok = true;
    Json body;
    if (ext.is_unramified() || ext.is_totally_ramified()) {
        if (sym) {
            auto s = symbolic_gamma(ext, b);
            body = verify_direct(s, ext, c.max_i, c.truncation.D, ok);
        } else {
            auto s = model_gamma(ext, b);
            body = verify_direct(s, ext, c.max_i, c.truncation.D, ok);
        }
    } else {
        auto stages = [&](auto tower) {
            Json logs = Json::array();
            for (int i = 1; i <= c.max_i; ++i) {
                const bool u = tower.unramified_stage().log_identity_holds(i);
                const bool r = tower.ramified_stage().log_identity_holds(i);
                const bool integral = is_integral(tower.image(i), tower.ramified_stage().target_context());
                ok = ok && u && r && integral;
                logs.push_back(Json{{"i", i}, {"unramified_stage", u}, {"ramified_stage", r}, {"integral", integral}});
            }
            return Json{{"log_identity", logs}};
        };
        body = sym ? stages(symbolic_tower_gamma(ext, b)) : stages(model_tower_gamma(ext, b));
    }
    body["provenance"] = provenance(c, "log identity and closed forms for the base-change map");
    body["extension"] = to_json(ext);
    body["basis"] = basis_name(b);
    body["route"] = sym ? "symbolic" : "model";
    body["ok"] = ok;
    return body;
}

// --- typify / iso ---------------------------------------------------------

inline int series_bound(const RunConfig& c, std::int64_t q) {
    const int N = c.truncation.N.value_or(static_cast<int>(checked_pow(q, 4)));
    if (N < 1) throw InvalidInput("series truncation must be positive");
    return N;
}

inline Json series_json(const TruncatedSeries<FieldElement>& s) {
    Json terms = Json::array();
    for (int k : s.support()) terms.push_back(Json::array({k, coeff_to_json(s[k])}));
    return Json{{"bound", s.bound()}, {"terms", terms}};
}

inline Json run_typify(const RunConfig& c, bool& ok) {
    const NumberField K = field_of(c);
    const std::int64_t q = K.q();
    const int N = series_bound(c, q);
    const std::int64_t target = c.target_q.value_or(q);
    std::mt19937_64 rng(c.seed);
    TruncatedSeries<FieldElement> log(N, K.zero(), K.one());
    log.set(1, K.one());
    for (int k = 2; k <= N; ++k) log.set(k, random_element(K, rng));
    const FormalModuleLaw<FieldElement> F(q, log);
    const auto T = typify(F, target);
    const auto TT = typify(T, target);
    const bool idem = TT == T && TT.q() == T.q();
    const bool typical = T.is_typical_for(target);
    ok = idem && typical;
    return Json{{"provenance", provenance(c, "typification of a seeded law by restriction of its logarithm")},
                {"field", to_json(K.description())},
                {"target_q", target},
                {"input_log", series_json(F.log())},
                {"typified_log", series_json(T.log())},
                {"idempotent", idem},
                {"typical", typical},
                {"ok", ok}};
}

inline Json run_iso(const RunConfig& c, bool& ok) {
    const NumberField K = field_of(c);
    const std::int64_t q = K.q();
    const int N = c.truncation.N.value_or(static_cast<int>(checked_pow(q, 3)));
    if (N < 1) throw InvalidInput("series truncation must be positive");
    std::mt19937_64 rng(c.seed);
    const std::size_t len = typical_length(q, N);
    std::vector<FieldElement> m{K.one()}, t{K.one()};
    for (std::size_t i = 1; i < len; ++i) m.push_back(random_element(K, rng));
    for (std::size_t i = 1; i < len; ++i) t.push_back(random_element(K, rng));
    const auto F = FormalModuleLaw<FieldElement>::typical(q, m, N, K.zero(), K.one());
    const auto [alpha, G] = iso_from_t(F, t);
    const auto back = t_from_iso(F, G);
    const bool round = back == alpha.t;
    ok = round;
    Json out{{"provenance", provenance(c, "strict isomorphism of typical laws from a t-sequence and back")},
             {"field", to_json(K.description())},
             {"N", N}};
    auto list = [](const std::vector<FieldElement>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(coeff_to_json(x));
        return a;
    };
    out["source_log_coefficients"] = list(m);
    out["t"] = list(alpha.t);
    out["target_log_coefficients"] = list(*G.typical_coefficients());
    out["recovered_t"] = list(back);
    out["round_trip"] = round;
    if (N <= 64) {
        // log_G = log_F o alpha^{-1} on series.
        const bool series = F.log().compose(alpha.inverse_series()) == G.log();
        out["log_transport"] = series;
        ok = ok && series;
    }
    out["ok"] = ok;
    return out;
}

// --- stabilizer ------------------------------------------------------------

inline Json relation_json(const GeneratorRelation& r) {
    if (r.killed) return Json{{"i", r.index}, {"killed", true}};
    return Json{{"i", r.index}, {"killed", false}, {"exponent", r.exponent}, {"coefficient", coeff_to_json(r.coefficient)}};
}

inline Json run_stabilizer(const RunConfig& c, bool& ok) {
    require_positive(c.h, "--h");
    const Extension ext = extension_of(c);
    std::string kind = c.quotient;
    if (kind.empty()) kind = ext.is_unramified() ? "unramified" : "tame";
    ThetaMap th;
    if (kind == "tame") th = theta_tame(ext, c.h, c.truncation.M);
    else if (kind == "unramified") th = theta_unramified(ext, c.h, c.truncation.M);
    else throw InvalidInput("--case must be tame or unramified");
    const auto& tg = th.target;
    ok = verify_theta_well_defined(tg);
    Json table = Json::array();
    for (int i = 1; i <= tg.M; ++i) {
        const auto& im = th.image[static_cast<std::size_t>(i - 1)];
        table.push_back(Json{{"i", i}, {"image", im ? Json("t_" + std::to_string(*im)) : Json(0)}});
    }
    Json rels = Json::array();
    for (const auto& r : tg.relations) rels.push_back(relation_json(r));
    Json cop = Json::array();
    Json coalg = Json::array();
    const int kmax = std::min({tg.coproduct_bound - 1, th.source.coproduct_bound - 1, tg.M, 4});
    for (int k = 1; k <= kmax; ++k) {
        const bool map = theta_is_coalgebra_map(k, th);
        ok = ok && map;
        cop.push_back(Json{{"k", k}, {"coproduct", poly_to_json(coproduct_low(k, tg))}});
        coalg.push_back(Json{{"k", k}, {"holds", map}});
    }
    Json out{{"provenance", provenance(c, std::string("quotient map of stabilizer presentations, ") + kind + " case")},
             {"extension", to_json(ext)},
             {"case", kind},
             {"h", c.h},
             {"M", tg.M},
             {"coefficient_field_degree", tg.field.degree()},
             {"theta", table},
             {"relations", rels},
             {"coproducts", cop},
             {"coalgebra_map", coalg},
             {"well_defined", verify_theta_well_defined(tg)}};
    if (tg.c) {
        out["c"] = coeff_to_json(*tg.c);
        out["epsilon_alpha"] = coeff_to_json(*th.epsilon_alpha);
        out["root_order"] = th.root_order.get_str();
        const bool root = tg.c->pow(th.root_order) == *th.epsilon_alpha;
        out["c_is_root"] = root;
        ok = ok && root;
    }
    out["ok"] = ok;
    return out;
}

// --- selftest --------------------------------------------------------------

inline Json run_selftest(const RunConfig& c, bool& ok) {
    ok = true;
    Json checks = Json::array();
    auto record = [&](const std::string& name, bool v) {
        ok = ok && v;
        checks.push_back(Json{{"check", name}, {"pass", v}});
    };
    for (auto [p, f, e] : {std::tuple{2, 1, 1}, {3, 1, 2}, {2, 2, 1}}) {
        const NumberField K = NumberField::make(p, f, e);
        const SymbolicContext ctx(K);
        for (int h = 1; h <= 2; ++h) {
            record("araki relation " + K.label() + " h=" + std::to_string(h), verify_araki(h, ctx));
            record("hazewinkel relation " + K.label() + " h=" + std::to_string(h), verify_hazewinkel(h, ctx));
            record("agree mod pi " + K.label() + " h=" + std::to_string(h), araki_congruent_to_hazewinkel(h, ctx));
        }
    }
    {
        const ModelContext ctx(NumberField::make(3, 1, 1));
        const auto w = w_int(2, 2, ctx);
        bool sym = true;
        for (const auto& p : w) sym = sym && is_symmetric(p, 2);
        record("w_int symmetric p=3 m=2", sym);
    }
    {
        const Extension ext = Extension::make(NumberField::make(3, 1, 1), NumberField::make(3, 1, 2));
        auto s = symbolic_gamma(ext, Basis::Hazewinkel);
        record("gamma log identity e=2 p=3", s.log_identity_holds(1) && s.log_identity_holds(2));
        record("gamma V1 closed form e=2 p=3", s.image(1) == closed_gamma_V1(s.source_context(), s.target_context()));
        record("gamma V2 closed form e=2 p=3", s.image(2) == closed_gamma_V2(s.source_context(), s.target_context()));
    }
    {
        const Extension ext = Extension::make(NumberField::make(2, 1, 1), NumberField::make(2, 2, 1));
        auto s = symbolic_gamma(ext, Basis::Hazewinkel);
        bool all = true;
        for (int i = 1; i <= 4; ++i) all = all && s.image(i) == closed_gamma_unramified<PiFraction>(i, 2, PiFraction::one());
        record("unramified gamma table f=2 p=2", all);
    }
    {
        const NumberField K = NumberField::make(2, 1, 1);
        std::mt19937_64 rng(c.seed);
        const int N = 8;
        bool all = true;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<FieldElement> m{K.one()}, t{K.one()};
            for (int i = 1; i < 4; ++i) m.push_back(random_element(K, rng));
            for (int i = 1; i < 4; ++i) t.push_back(random_element(K, rng));
            const auto F = FormalModuleLaw<FieldElement>::typical(2, m, N, K.zero(), K.one());
            const auto [alpha, G] = iso_from_t(F, t);
            all = all && t_from_iso(F, G) == alpha.t;
        }
        record("strict iso round trip p=2 seeded", all);
    }
    {
        const Extension ext = Extension::make(NumberField::make(3, 1, 1), NumberField::make(3, 1, 2));
        const ThetaMap th = theta_tame(ext, 2);
        bool map = verify_theta_well_defined(th.target) && th.target.c->pow(th.root_order) == *th.epsilon_alpha;
        for (int k = 1; k < th.target.coproduct_bound; ++k) map = map && theta_is_coalgebra_map(k, th);
        record("tame theta p=3 e=2 h=2", map);
    }
    {
        const Extension ext = Extension::make(NumberField::make(2, 1, 1), NumberField::make(2, 2, 1));
        const ThetaMap th = theta_unramified(ext, 2);
        bool map = !th.image[0].has_value() && th.image[1] == 2;
        for (int k = 1; k < th.target.coproduct_bound; ++k) map = map && theta_is_coalgebra_map(k, th);
        record("unramified theta f=2 h=2", map);
    }
    return Json{{"provenance", provenance(c, "fixed battery of identity checks across all modules")},
                {"checks", checks},
                {"ok", ok}};
}

// --- text rendering ----------------------------------------------------------

inline void render_text(const Json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [](const Json& v) {
        if (!v.is_array()) return false;
        for (const auto& x : v)
            if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_structured())) return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !flat(v)) {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << k << ": " << (v.is_structured() ? v.dump() : scalar(v)) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured()) {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            } else {
                os << pad << "- " << scalar(v) << "\n";
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

}  // namespace cli_detail

/// Dispatches one configured computation. FMLAB_TRUNCATION fills bounds the
/// config leaves unset. Exit codes: 0 success, 1 invalid
/// configuration, 2 failed mathematical assertion or verification.
inline RunResult execute(const RunConfig& cfg) {
    using namespace cli_detail;
    RunConfig c = cfg;
    RunResult r;
    try {
        if (const char* env = std::getenv("FMLAB_TRUNCATION"); env && *env) {
            const TruncationBounds t = parse_truncation(env);
            if (!c.truncation.N) c.truncation.N = t.N;
            if (!c.truncation.M) c.truncation.M = t.M;
            if (!c.truncation.D) c.truncation.D = t.D;
        }
        if (c.format != "json" && c.format != "text") throw InvalidInput("--format must be json or text");
        bool ok = true;
        Json doc;
        if (c.subcommand == "log") doc = run_log(c);
        else if (c.subcommand == "w") doc = run_w(c, ok);
        else if (c.subcommand == "araki-verify") doc = run_araki_verify(c, ok);
        else if (c.subcommand == "gamma") doc = run_gamma(c);
        else if (c.subcommand == "gamma-verify") doc = run_gamma_verify(c, ok);
        else if (c.subcommand == "typify") doc = run_typify(c, ok);
        else if (c.subcommand == "iso") doc = run_iso(c, ok);
        else if (c.subcommand == "stabilizer") doc = run_stabilizer(c, ok);
        else if (c.subcommand == "selftest") doc = run_selftest(c, ok);
        else throw InvalidInput("unknown subcommand '" + c.subcommand + "'");
        if (c.format == "json") {
            r.document = dump(doc);
        } else {
            std::ostringstream os;
            render_text(doc, os, 0);
            r.document = os.str();
        }
        r.exit_code = ok ? 0 : 2;
        if (!ok) r.error = "verification failed";
    } catch (const InvalidInput& ex) {
        r.exit_code = 1;
        r.error = ex.what();
    } catch (const MathAssertion& ex) {
        r.exit_code = 2;
        r.error = ex.what();
    }
    return r;
}

/// Parses argv, runs, and writes the document to --output or out.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Exact generator calculus for formal module laws over p-adic number rings", "fmlab"};
    app.set_help_flag("--help", "print this help");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::string> truncation;
    app.add_option("--p", c.p, "residue characteristic");
    app.add_option("--f", c.f, "residue degree (of the top field for towers)");
    app.add_option("--e", c.e, "ramification degree (of the top field for towers)");
    app.add_option("--field", c.field, "field description: inline JSON or a file");
    app.add_option("--ext", c.ext, "tower {\"base\": field, \"top\": field}: inline JSON or a file");
    app.add_option("--basis", c.basis, "araki | hazewinkel");
    app.add_option("--h", c.h, "height or index");
    app.add_option("--max-i", c.max_i, "largest generator index");
    app.add_option("--m", c.m, "number of variables for w");
    app.add_option("--seq", c.seq, "index sequence for w, comma separated");
    app.add_option("--target-q", c.target_q, "typification target, a power of q");
    app.add_option("--case", c.quotient, "tame | unramified");
    app.add_option("--M", c.truncation.M, "number of stabilizer generators");
    app.add_option("--N", c.truncation.N, "series truncation in X-degree");
    app.add_option("--D", c.truncation.D, "degree bound for linear algebra");
    app.add_option("--route", c.route, "auto | model | symbolic");
    app.add_option("--output,-o", c.output, "write the document to this file");
    app.add_option("--format", c.format, "json | text");
    app.add_option("--seed", c.seed, "seed for generated inputs");
    const std::pair<const char*, const char*> subcommands[] = {
        {"log", "logarithm coefficients in the Araki or Hazewinkel generators"},
        {"w", "the integral polynomials w_j and w_I"},
        {"araki-verify", "generator relations and their agreement mod pi"},
        {"gamma", "images of the generators under base change"},
        {"gamma-verify", "base change images against closed forms and the log identity"},
        {"typify", "typification of a random formal module law"},
        {"iso", "strict isomorphism round trip on random t-lists"},
        {"stabilizer", "presentation of the stabilizer quotient and the induced map"},
        {"selftest", "fixed battery of checks with a deterministic report"}};
    for (const auto& [name, help] : subcommands)
        app.add_subcommand(name, help)->callback([&c, name = name] { c.subcommand = name; });
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? 0 : 1;
    }
    RunResult r = execute(c);
    if (!r.error.empty()) err << "fmlab: " << r.error << "\n";
    if (r.document.empty()) return r.exit_code;
    if (c.output.empty()) {
        out << r.document;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) {
            err << "fmlab: cannot write '" << c.output << "'\n";
            return 1;
        }
        f << r.document;
    }
    return r.exit_code;
}

}  // namespace fmlab
