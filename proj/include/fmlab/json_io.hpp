#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmlab/basechange.hpp"
#include "fmlab/graded_poly.hpp"
#include "fmlab/number_field.hpp"
#include "fmlab/pi_fraction.hpp"

namespace fmlab {

using Json = nlohmann::json;

// Canonical JSON forms. Objects are key-sorted by nlohmann::json itself, so
// equal values always serialize to identical bytes.

inline Json to_json(const FieldDescription& d) {
    return Json{{"p", d.p}, {"f", d.f}, {"e", d.e}, {"unramified_minpoly", d.unramified_minpoly},
                {"eisenstein_minpoly", d.eisenstein_minpoly}};
}

inline NumberField field_from_json(const Json& j) {
    try {
        const auto p = j.at("p").get<std::int64_t>();
        const int f = j.value("f", 1);
        const int e = j.value("e", 1);
        std::optional<IntPoly> u, E;
        if (j.contains("unramified_minpoly")) u = j.at("unramified_minpoly").get<IntPoly>();
        if (j.contains("eisenstein_minpoly")) E = j.at("eisenstein_minpoly").get<IntPoly>();
        return NumberField::make(p, f, e, u, E);
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("malformed field description: ") + ex.what());
    }
}

inline Json to_json(const Extension& ext) {
    return Json{{"base", to_json(ext.base().description())}, {"top", to_json(ext.top().description())}};
}

inline Extension extension_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("base") || !j.contains("top"))
        throw InvalidInput("a tower needs \"base\" and \"top\" field descriptions");
    return Extension::make(field_from_json(j.at("base")), field_from_json(j.at("top")));
}

/// Parses inline JSON, or reads it from a file when the text is a path.
inline Json load_json_argument(const std::string& text) {
    std::string body = text;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] != '{' && text[first] != '[') {
        std::ifstream in(text);
        if (!in) throw InvalidInput("cannot read JSON file '" + text + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return Json::parse(body);
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("invalid JSON: ") + ex.what());
    }
}

inline Json coeff_to_json(const Rational& c) { return c.get_str(); }
inline Json coeff_to_json(const FieldElement& c) {
    Json a = Json::array();
    for (const auto& r : c.coordinates()) a.push_back(r.get_str());
    return a;
}
inline Json coeff_to_json(const FiniteFieldElement& c) { return c.coordinates(); }
inline Json coeff_to_json(const PiFraction& c) {
    Json num = Json::array(), den = Json::array();
    for (const auto& [k, v] : c.numerator()) num.push_back(Json::array({k, v.get_str()}));
    for (const auto& [d, k] : c.denominator()) den.push_back(Json::array({d, k}));
    Json s{{"shift", c.shift()}, {"num", num}, {"den", den}};
    if (c.is_truncated()) s["precision"] = c.precision();
    return Json{{"symbolic", s}};
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidInput("expected a rational number as a string or integer");
}

inline FieldElement field_element_from_json(const Json& j, const NumberField& K) {
    if (!j.is_array()) return K.from_rational(rational_from_json(j));
    if (j.size() != static_cast<std::size_t>(K.degree())) throw InvalidInput("coordinate vector has the wrong length");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return FieldElement(K, std::move(c));
}

inline FiniteFieldElement finite_field_element_from_json(const Json& j, const FiniteField& F) {
    return FiniteFieldElement(F, j.get<std::vector<std::int64_t>>());
}

inline PiFraction pi_fraction_from_json(const Json& j) {
    const Json& s = j.at("symbolic");
    PiFraction::Poly num;
    for (const auto& t : s.at("num")) num[t.at(0).get<std::int64_t>()] = rational_from_json(t.at(1));
    std::map<std::int64_t, int> den;
    for (const auto& t : s.at("den")) den[t.at(0).get<std::int64_t>()] = t.at(1).get<int>();
    return PiFraction::from_parts(s.at("shift").get<std::int64_t>(), std::move(num), std::move(den));
}

inline Json monomial_to_json(const Monomial& m, bool with_tags) {
    Json a = Json::array();
    for (const auto& [var, e] : m.factors()) {
        Json f = Json::array({family_name(var.family), var.index, e});
        if (with_tags) f.push_back(std::string(1, var.tag));
        a.push_back(f);
    }
    return a;
}

inline Monomial monomial_from_json(const Json& j, char ring) {
    std::vector<Monomial::Factor> f;
    for (const auto& t : j) {
        const Family fam = family_from_name(t.at(0).get<std::string>());
        const char tag = t.size() > 3 ? t.at(3).get<std::string>().at(0) : (fam == Family::X ? 'x' : ring);
        f.emplace_back(Variable{fam, tag, t.at(1).get<int>()}, t.at(2).get<std::int64_t>());
    }
    return Monomial(std::move(f));
}

/// {"ring": tag or null, "terms": [{"coeff": ..., "mono": [[family, index, exponent(, tag)]]}]},
/// terms in descending monomial order.
template <class C>
Json poly_to_json(const GradedPoly<C>& p) {
    std::set<char> tags;
    for (const auto& [m, c] : p.terms())
        for (const auto& [var, e] : m.factors())
            if (var.family != Family::X) tags.insert(var.tag);
    const bool multi = tags.size() > 1;
    Json terms = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back(Json{{"coeff", coeff_to_json(it->second)}, {"mono", monomial_to_json(it->first, multi)}});
    Json ring = tags.size() == 1 ? Json(std::string(1, *tags.begin())) : Json(nullptr);
    return Json{{"ring", ring}, {"terms", terms}};
}

template <class C, class CoeffParser>
GradedPoly<C> poly_from_json(const Json& j, CoeffParser&& parse) {
    const char ring = j.at("ring").is_string() ? j.at("ring").get<std::string>().at(0) : 'A';
    GradedPoly<C> p;
    for (const auto& t : j.at("terms")) p.add_term(monomial_from_json(t.at("mono"), ring), parse(t.at("coeff")));
    return p;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fmlab
