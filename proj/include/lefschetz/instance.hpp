/*
   Copyright 2026 The lefschetz authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file instance.hpp
 * @brief Problem instances and their JSON file format.
 *
 *     {
 *       "field":   {"kind": "prime", "p": 32003} | {"kind": "rational"},
 *       "source":  [7, 2, 2, 2],
 *       "target":  [1, 0],
 *       "entries": [[ [[i, j, k, c], ...], ... ], ...],   // optional, n rows of n+2 forms
 *       "seed":    42,                                     // optional, default 0
 *       "samples": 3,                                      // optional, default 3
 *       "max_degree": 20                                   // optional
 *     }
 *
 * A form is a list of [i, j, k, c] terms meaning c x^i y^j z^k with integer c.
 * Without "entries" the map is drawn at random from the seed.
 */

#ifndef LEFSCHETZ_INSTANCE_HPP
#define LEFSCHETZ_INSTANCE_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "field.hpp"
#include "graded.hpp"
#include "poly.hpp"

namespace lefschetz {

struct FieldSpec {
    enum class Kind { Prime, Rational };
    Kind kind = Kind::Prime;
    std::uint32_t p = PrimeField::default_modulus;

    std::string name() const { return kind == Kind::Rational ? "Q" : "GF(" + std::to_string(p) + ")"; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Parses "Q", "rational", "p" (the default prime) or a decimal prime.
inline FieldSpec parse_field_spec(const std::string& text) {
    if (text == "Q" || text == "q" || text == "rational") return {FieldSpec::Kind::Rational, 0};
    if (text == "p" || text == "prime") return {};
    std::uint64_t p = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9' || p > (1ull << 32)) throw ParseError("field: expected Q, p or a prime, got '" + text + "'");
        p = p * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    if (text.empty() || p >= (1ull << 31) || !is_prime(p) || p <= 3)
        throw ParseError("field: '" + text + "' is not a prime in (3, 2^31)");
    return {FieldSpec::Kind::Prime, static_cast<std::uint32_t>(p)};
}

struct Term {
    int i = 0;
    int j = 0;
    int k = 0;
    std::int64_t c = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// A form as written in an instance file; its degree is implied by its terms.
using TermList = std::vector<Term>;

struct Instance {
    FieldSpec field;
    TwistSequence source;
    TwistSequence target;
    /// entries[j][i] maps source summand i to target summand j.
    std::optional<std::vector<std::vector<TermList>>> entries;
    std::uint64_t seed = 0;
    std::size_t samples = 3;
    /// Upper bound on the top degree of M; larger instances are rejected.
    std::optional<int> max_degree;
};

/// Checks twist lengths, the entry grid shape, term degrees and the size cap.
inline void validate(const Instance& inst) {
    if (inst.target.empty()) throw ShapeError("instance: target must have at least one summand");
    if (inst.source.size() != inst.target.size() + 2)
        throw ShapeError("instance: source has " + std::to_string(inst.source.size()) + " summands, expected " +
                         std::to_string(inst.target.size() + 2));
    if (inst.samples == 0) throw ParseError("instance: samples must be positive");
    if (inst.max_degree && top_degree(inst.source, inst.target) > *inst.max_degree)
        throw DegreeError("instance: top degree " + std::to_string(top_degree(inst.source, inst.target)) +
                          " exceeds max_degree " + std::to_string(*inst.max_degree));
    if (!inst.entries) return;

    const auto& grid = *inst.entries;
    if (grid.size() != inst.target.size()) throw ShapeError("instance: entries must have one row per target summand");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (grid[j].size() != inst.source.size())
            throw ShapeError("instance: entries row " + std::to_string(j) + " must have one form per source summand");
        for (std::size_t i = 0; i < grid[j].size(); ++i) {
            const int deg = inst.source[i] - inst.target[j];
            for (const auto& t : grid[j][i]) {
                if (t.i < 0 || t.j < 0 || t.k < 0)
                    throw ParseError("instance: negative exponent in entry (" + std::to_string(j) + "," +
                                     std::to_string(i) + ")");
                if (t.i + t.j + t.k != deg)
                    throw DegreeError("instance: entry (" + std::to_string(j) + "," + std::to_string(i) +
                                      ") has a term of degree " + std::to_string(t.i + t.j + t.k) + ", expected " +
                                      (deg < 0 ? std::string("no terms") : "degree " + std::to_string(deg)));
            }
        }
    }
}

namespace detail {

inline int json_int(const nlohmann::json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ParseError("instance: " + what + " must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < -1'000'000 || x > 1'000'000) throw ParseError("instance: " + what + " is out of range");
    return static_cast<int>(x);
}

inline TwistSequence json_twists(const nlohmann::json& v, const std::string& what) {
    if (!v.is_array()) throw ParseError("instance: " + what + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) out.push_back(json_int(x, what + " entry"));
    return TwistSequence(std::move(out));
}

inline TermList json_terms(const nlohmann::json& v) {
    if (!v.is_array()) throw ParseError("instance: a form must be an array of [i, j, k, c] terms");
    TermList out;
    for (const auto& t : v) {
        if (!t.is_array() || t.size() != 4) throw ParseError("instance: a term must be [i, j, k, c]");
        if (!t[3].is_number_integer()) throw ParseError("instance: term coefficients must be integers");
        out.push_back({json_int(t[0], "exponent"), json_int(t[1], "exponent"), json_int(t[2], "exponent"),
                       t[3].get<std::int64_t>()});
    }
    return out;
}

}  // namespace detail

inline Instance parse_instance_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("instance: top level must be an object");
    for (const char* key : {"source", "target"})
        if (!doc.contains(key)) throw ParseError(std::string("instance: missing \"") + key + "\"");

    Instance inst;
    if (doc.contains("field")) {
        const auto& f = doc["field"];
        if (f.is_string()) {
            inst.field = parse_field_spec(f.get<std::string>());
        } else if (f.is_object() && f.contains("kind") && f["kind"].is_string()) {
            const auto kind = f["kind"].get<std::string>();
            if (kind == "rational") {
                inst.field = {FieldSpec::Kind::Rational, 0};
            } else if (kind == "prime") {
                if (f.contains("p")) {
                    if (!f["p"].is_number_unsigned()) throw ParseError("instance: field.p must be a positive integer");
                    inst.field = parse_field_spec(std::to_string(f["p"].get<std::uint64_t>()));
                }
            } else {
                throw ParseError("instance: field.kind must be \"prime\" or \"rational\"");
            }
        } else {
            throw ParseError("instance: field must be an object with a \"kind\"");
        }
    }
    inst.source = detail::json_twists(doc["source"], "source");
    inst.target = detail::json_twists(doc["target"], "target");

    if (doc.contains("entries") && !doc["entries"].is_null()) {
        const auto& rows = doc["entries"];
        if (!rows.is_array()) throw ParseError("instance: entries must be an array of rows");
        std::vector<std::vector<TermList>> grid;
        for (const auto& row : rows) {
            if (!row.is_array()) throw ParseError("instance: each entries row must be an array of forms");
            std::vector<TermList> forms;
            for (const auto& form : row) forms.push_back(detail::json_terms(form));
            grid.push_back(std::move(forms));
        }
        inst.entries = std::move(grid);
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ParseError("instance: seed must be a non-negative integer");
        inst.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("samples")) {
        if (!doc["samples"].is_number_unsigned()) throw ParseError("instance: samples must be a positive integer");
        inst.samples = doc["samples"].get<std::size_t>();
    }
    if (doc.contains("max_degree")) inst.max_degree = detail::json_int(doc["max_degree"], "max_degree");

    validate(inst);
    return inst;
}

inline Instance parse_instance_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: malformed JSON: ") + e.what());
    }
    return parse_instance_json(doc);
}

inline Instance parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("instance: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_string(buf.str());
}

inline nlohmann::ordered_json terms_json(const TermList& terms) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& t : terms) out.push_back({t.i, t.j, t.k, t.c});
    return out;
}

inline nlohmann::ordered_json instance_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    if (inst.field.kind == FieldSpec::Kind::Rational)
        doc["field"] = {{"kind", "rational"}};
    else
        doc["field"] = {{"kind", "prime"}, {"p", inst.field.p}};
    doc["source"] = inst.source.values();
    doc["target"] = inst.target.values();
    if (inst.entries) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : *inst.entries) {
            auto forms = nlohmann::ordered_json::array();
            for (const auto& f : row) forms.push_back(terms_json(f));
            rows.push_back(std::move(forms));
        }
        doc["entries"] = std::move(rows);
    }
    doc["seed"] = inst.seed;
    doc["samples"] = inst.samples;
    if (inst.max_degree) doc["max_degree"] = *inst.max_degree;
    return doc;
}

/// The form of the given degree with the listed integer terms; repeated
/// monomials add up.
template <Field F>
HomogPoly<F> form_from_terms(const F& field, int degree, const TermList& terms) {
    auto p = HomogPoly<F>::zero(field, degree);
    for (const auto& t : terms) {
        const Monomial m{t.i, t.j, t.k};
        if (m.degree() != degree) throw DegreeError("form: term degree does not match the form degree");
        p.set_coefficient(m, field.add(p.coefficient(m), field.from_int(t.c)));
    }
    return p;
}

/// The explicit map of an instance with an entry grid.
template <Field F>
GradedMap<F> explicit_map(const F& field, const Instance& inst) {
    if (!inst.entries) throw std::invalid_argument("explicit_map: instance has no entries");
    validate(inst);
    std::vector<HomogPoly<F>> forms;
    for (std::size_t j = 0; j < inst.target.size(); ++j)
        for (std::size_t i = 0; i < inst.source.size(); ++i)
            forms.push_back(form_from_terms(field, inst.source[i] - inst.target[j], (*inst.entries)[j][i]));
    return GradedMap<F>(inst.source, inst.target, std::move(forms));
}

/// Integer terms of a form; coefficients use the field's own representative.
template <Field F>
std::vector<std::pair<Monomial, std::string>> form_terms(const F& field, const HomogPoly<F>& f) {
    std::vector<std::pair<Monomial, std::string>> out;
    if (f.degree() < 0) return out;
    const auto basis = monomial_basis(f.degree());
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!field.is_zero(f.coeffs()[k])) out.emplace_back(basis[k], field.to_string(f.coeffs()[k]));
    return out;
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_INSTANCE_HPP
