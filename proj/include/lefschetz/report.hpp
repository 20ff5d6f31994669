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
 * @file report.hpp
 * @brief The result of one analysis, as JSON and as text.
 *
 * Reports hold no field elements, only integers and coefficient strings, so
 * one type serves every field. Timings are the only non-reproducible part
 * and are emitted only on request.
 */

#ifndef LEFSCHETZ_REPORT_HPP
#define LEFSCHETZ_REPORT_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cohomology.hpp"
#include "graded.hpp"
#include "lefschetz.hpp"
#include "poly.hpp"

namespace lefschetz {

/// Nonzero terms of a form with coefficients printed by the field.
using FormTerms = std::vector<std::pair<Monomial, std::string>>;

struct ReportChecks {
    bool alternating_sum = true;  // direct dim M_d equals the four-term sum
    bool palindrome = true;       // dim M_d = dim M_{-3-c1-d}
    bool euler = true;            // h0 - h1 + h2 = chi at every tabulated twist
    bool splitting = true;        // computed splitting equals predicted
    bool ranges = true;           // measured ranks cover the predicted ranges
    std::optional<bool> h0_formula;  // unstable only

    bool ok() const {
        return alternating_sum && palindrome && euler && splitting && ranges && h0_formula.value_or(true);
    }
};

struct Report {
    std::string field;
    TwistSequence source;
    TwistSequence target;
    std::uint64_t seed = 0;

    HilbertFunction hilbert;
    ChernData chern;
    BundleClass bundle_class;
    SplittingType predicted;
    SplittingType computed;
    int line_attempts = 0;
    std::array<std::array<std::string, 3>, 2> line;
    CohomologyTable cohomology;
    WlpVerdict verdict;
    PredictedRanges ranges;
    Concordance concordance;
    bool unimodal = true;
    ReportChecks checks;

    std::vector<FormTerms> forms;                     // sampled linear forms
    std::optional<std::vector<FormTerms>> generated;  // random map entries, row-major
    int generation_attempts = 0;
    std::vector<std::pair<std::string, double>> timings;  // seconds per stage

    bool wlp() const { return verdict.wlp; }
    bool ok() const { return verdict.wlp && unimodal && checks.ok(); }
};

namespace detail {

/// Integer-valued coefficients become JSON numbers, fractions stay strings.
inline nlohmann::ordered_json coeff_json(const std::string& c) {
    const std::size_t start = !c.empty() && c[0] == '-' ? 1 : 0;
    const bool integral = c.size() > start && c.size() - start <= 18 &&
                          c.find_first_not_of("0123456789", start) == std::string::npos;
    if (integral) return std::stoll(c);
    return c;
}

inline nlohmann::ordered_json form_json(const FormTerms& f) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& [m, c] : f) out.push_back({m.x, m.y, m.z, coeff_json(c)});
    return out;
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

inline std::string tuple_string(const TwistSequence& t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
    os << ')';
    return os.str();
}

inline std::string form_string(const FormTerms& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    const char* names[3] = {"x", "y", "z"};
    for (std::size_t n = 0; n < f.size(); ++n) {
        const auto& [m, c] = f[n];
        os << (n ? " + " : "") << c;
        const int e[3] = {m.x, m.y, m.z};
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            os << '*' << names[v];
            if (e[v] > 1) os << '^' << e[v];
        }
    }
    return os.str();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Report& r, bool with_timings = false) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["field"] = r.field;
    doc["source"] = r.source.values();
    doc["target"] = r.target.values();
    doc["hilbert"] = {{"offset", r.hilbert.offset()}, {"dims", r.hilbert.dims()}};
    doc["chern"] = {{"c1", r.chern.c1},
                    {"c2", r.chern.c2},
                    {"s", r.chern.s},
                    {"c1Norm", r.chern.c1_norm},
                    {"c2Norm", r.chern.c2_norm()}};
    doc["class"] = {{"variant", to_string(r.bundle_class.variant)}, {"k", r.bundle_class.k}};
    doc["splitting"] = {{"predicted", {r.predicted.e, r.predicted.f}},
                        {"computed", {r.computed.e, r.computed.f}},
                        {"lineAttempts", r.line_attempts}};

    auto coh = ordered_json::array();
    for (const auto& row : r.cohomology.rows) coh.push_back({row.t, row.h0, row.h1, row.h2});
    doc["cohomology"] = std::move(coh);

    auto prof = ordered_json::array();
    for (const auto& e : r.verdict.entries) prof.push_back({e.d, e.dim_prev, e.dim_cur, e.rank, to_string(e.flag)});
    doc["profile"] = std::move(prof);

    doc["ranges"] = {{"injMaxD", r.ranges.inj_max_d()},
                     {"surjMinD", r.ranges.surj_min_d()},
                     {"shift", r.ranges.shift},
                     {"derived", r.ranges.derived}};
    doc["wlp"] = r.verdict.wlp;
    doc["unimodal"] = r.unimodal;

    auto disc = ordered_json::array();
    for (const auto& d : r.concordance.discrepancies)
        disc.push_back({{"kind", to_string(d.kind)}, {"d", d.d}, {"message", d.message}});
    doc["concordance"] = {{"ok", r.concordance.ok()}, {"discrepancies", std::move(disc)}};

    doc["checks"] = {{"alternatingSum", r.checks.alternating_sum},
                     {"palindrome", r.checks.palindrome},
                     {"eulerCharacteristic", r.checks.euler},
                     {"splitting", r.checks.splitting},
                     {"ranges", r.checks.ranges},
                     {"h0Formula", r.checks.h0_formula ? ordered_json(*r.checks.h0_formula) : ordered_json(nullptr)}};

    ordered_json seeds;
    seeds["seed"] = r.seed;
    seeds["samples"] = r.forms.size();
    auto forms = ordered_json::array();
    for (const auto& f : r.forms) forms.push_back(detail::form_json(f));
    seeds["forms"] = std::move(forms);
    auto line = ordered_json::array();
    for (const auto& p : r.line) {
        auto pt = ordered_json::array();
        for (const auto& c : p) pt.push_back(detail::coeff_json(c));
        line.push_back(std::move(pt));
    }
    seeds["line"] = std::move(line);
    if (r.generated) {
        seeds["generationAttempts"] = r.generation_attempts;
        auto entries = ordered_json::array();
        for (const auto& f : *r.generated) entries.push_back(detail::form_json(f));
        seeds["entries"] = std::move(entries);
    }
    doc["seeds"] = std::move(seeds);

    if (with_timings) {
        ordered_json t;
        for (const auto& [stage, secs] : r.timings) t[stage] = secs;
        doc["timings"] = std::move(t);
    }
    return doc;
}

inline std::string to_text(const Report& r, bool with_timings = false) {
    std::ostringstream os;
    const auto yes = [](bool b) { return b ? "yes" : "no"; };
    os << "field        " << r.field << '\n';
    os << "source       " << detail::tuple_string(r.source) << '\n';
    os << "target       " << detail::tuple_string(r.target) << '\n';
    os << "seed         " << r.seed << '\n';
    os << '\n';
    if (r.hilbert.is_zero())
        os << "Hilbert      0\n";
    else
        os << "Hilbert      " << detail::join(r.hilbert.dims(), " ") << "  (degrees " << r.hilbert.offset() << ".."
           << r.hilbert.end_degree() - 1 << ", length " << r.hilbert.total() << ")\n";
    os << "Chern        c1 = " << r.chern.c1 << ", c2 = " << r.chern.c2 << '\n';
    os << "normalized   s = " << r.chern.s << ", c1 = " << r.chern.c1_norm << ", c2 = " << r.chern.c2_norm() << '\n';
    os << "class        " << to_string(r.bundle_class.variant);
    if (r.bundle_class.variant == Stability::Unstable) os << ", k = " << r.bundle_class.k;
    os << '\n';
    os << "splitting    predicted (" << r.predicted.e << ", " << r.predicted.f << "), computed (" << r.computed.e
       << ", " << r.computed.f << ") on line " << r.line_attempts << '\n';
    os << '\n';

    os << "cohomology of E(t)\n";
    os << "     t    h0    h1    h2\n";
    for (const auto& row : r.cohomology.rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%6d%6zu%6zu%6zu\n", row.t, row.h0, row.h1, row.h2);
        os << buf;
    }
    os << '\n';

    os << "multiplication by a general linear form, M_{d-1} -> M_d\n";
    os << "     d  prev   cur  rank  flag\n";
    for (const auto& e : r.verdict.entries) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%6d%6zu%6zu%6zu  %s\n", e.d, e.dim_prev, e.dim_cur, e.rank, to_string(e.flag));
        os << buf;
    }
    os << '\n';
    os << "predicted    injective for d <= " << r.ranges.inj_max_d() << ", surjective for d >= "
       << r.ranges.surj_min_d() << (r.ranges.derived ? " (from the restriction criteria)" : "") << '\n';
    os << "WLP          " << yes(r.verdict.wlp) << '\n';
    os << "unimodal     " << yes(r.unimodal) << '\n';
    for (const auto& d : r.concordance.discrepancies) os << "discrepancy  " << to_string(d.kind) << ": " << d.message << '\n';
    os << "checks       alternating sum " << yes(r.checks.alternating_sum) << ", palindrome " << yes(r.checks.palindrome)
       << ", Euler characteristic " << yes(r.checks.euler) << ", splitting " << yes(r.checks.splitting)
       << ", ranges " << yes(r.checks.ranges);
    if (r.checks.h0_formula) os << ", h0 formula " << yes(*r.checks.h0_formula);
    os << '\n';
    for (std::size_t i = 0; i < r.forms.size(); ++i) os << "form " << i << "       " << detail::form_string(r.forms[i]) << '\n';

    if (with_timings) {
        os << '\n';
        for (const auto& [stage, secs] : r.timings) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "time %-12s %.4f s\n", stage.c_str(), secs);
            os << buf;
        }
    }
    return os.str();
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_REPORT_HPP
