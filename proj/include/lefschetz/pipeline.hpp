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
 * @file pipeline.hpp
 * @brief End-to-end runs: analyze one instance, complete intersections, and
 *        seeded random corpora.
 *
 * Every random draw comes from one engine seeded by the instance seed, in a
 * fixed order: map entries (if generated), the line for the splitting type,
 * then the linear forms. Rerunning with the same seed reproduces the report.
 */

#ifndef LEFSCHETZ_PIPELINE_HPP
#define LEFSCHETZ_PIPELINE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cohomology.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "graded.hpp"
#include "instance.hpp"
#include "lefschetz.hpp"
#include "report.hpp"

namespace lefschetz {

namespace detail {

class StageClock {
public:
    explicit StageClock(std::vector<std::pair<std::string, double>>& sink)
        : sink_(sink), start_(std::chrono::steady_clock::now()), last_(start_) {}

    void mark(const char* stage) {
        const auto now = std::chrono::steady_clock::now();
        sink_.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }
    void total() { sink_.emplace_back("total", std::chrono::duration<double>(last_ - start_).count()); }

private:
    std::vector<std::pair<std::string, double>>& sink_;
    std::chrono::steady_clock::time_point start_;
    std::chrono::steady_clock::time_point last_;
};

inline std::string discrepancy_summary(const Concordance& c) {
    std::string out;
    for (const auto& d : c.discrepancies) out += (out.empty() ? "" : "; ") + std::string(to_string(d.kind)) + ": " + d.message;
    return out;
}

}  // namespace detail

/**
 * Analyzes a map with finite-length cokernel through its per-degree ranks.
 * `rng` supplies the line and the linear forms. Throws NotFiniteLength,
 * LineDegenerate, ConsistencyFailure, or TheoremViolation when the measured
 * ranks contradict the predicted ranges; softer failures (splitting,
 * unimodality, the h0 formula) only clear report flags.
 */
template <Field F>
Report analyze_ranks(const DegreeRanks<F>& ranks, std::mt19937_64& rng, std::size_t samples = 3, Report report = {}) {
    const auto& field = ranks.field();
    const auto& map = ranks.map();
    detail::StageClock clock(report.timings);
    report.field = field.name();
    report.source = map.source();
    report.target = map.target();

    report.hilbert = coker_dims(ranks);
    report.checks.alternating_sum = true;  // coker_dims throws otherwise
    clock.mark("hilbert");

    report.chern = chern_classes(map.source(), map.target());
    const auto& c = report.chern;
    report.cohomology = cohomology_table(ranks, c);
    for (const auto& row : report.cohomology.rows)
        if (static_cast<std::int64_t>(row.h0) - static_cast<std::int64_t>(row.h1) + static_cast<std::int64_t>(row.h2) !=
            euler_char(c, row.t))
            report.checks.euler = false;
    for (int d = report.hilbert.offset(); d < report.hilbert.end_degree(); ++d)
        if (report.hilbert.at(d) != report.hilbert.at(-3 - c.c1 - d)) report.checks.palindrome = false;
    clock.mark("cohomology");

    report.bundle_class = classify(ranks, c);
    report.predicted = predicted_splitting(report.bundle_class);
    if (report.bundle_class.variant == Stability::Unstable)
        report.checks.h0_formula = h0_formula_check(ranks, report.bundle_class, c).ok();
    clock.mark("classify");

    const auto split = computed_splitting(field, map, c, rng);
    report.computed = split.type;
    report.line_attempts = split.attempts;
    for (std::size_t v = 0; v < 3; ++v) {
        report.line[0][v] = field.to_string(split.line.p0[v]);
        report.line[1][v] = field.to_string(split.line.p1[v]);
    }
    report.checks.splitting = report.computed == report.predicted;
    clock.mark("splitting");

    const auto profile = generic_profile(ranks, report.hilbert, rng, samples);
    for (const auto& L : profile.forms) report.forms.push_back(form_terms(field, L));
    clock.mark("profile");

    report.verdict = wlp_verdict(profile);
    report.ranges = theorem_ranges(report.bundle_class, c.s);
    report.concordance = verify_theorem(report.verdict, report.ranges);
    report.checks.ranges = report.concordance.ok();
    report.unimodal = unimodality(report.hilbert);
    clock.mark("verdict");
    clock.total();

    if (!report.concordance.ok())
        throw TheoremViolation("measured ranks contradict the predicted ranges for source " +
                               detail::tuple_string(map.source()) + ", target " + detail::tuple_string(map.target()) +
                               ": " + detail::discrepancy_summary(report.concordance));
    return report;
}

template <Field F>
Report analyze_map(const F& field, const GradedMap<F>& map, std::mt19937_64& rng, std::size_t samples = 3,
                   Report report = {}) {
    const DegreeRanks<F> ranks(field, map);
    return analyze_ranks(ranks, rng, samples, std::move(report));
}

/// A random map with finite-length cokernel and the ranks that certified it.
/// Both live on the heap so the ranks' reference to the map survives moves.
template <Field F>
struct GeneratedMap {
    std::unique_ptr<GradedMap<F>> map;
    std::unique_ptr<DegreeRanks<F>> ranks;
    int attempts = 0;
};

/// Same draws and failure modes as random_instance, keeping the ranks.
template <Field F>
GeneratedMap<F> generate_map(const F& field, const TwistSequence& src, const TwistSequence& tgt, std::mt19937_64& rng,
                             int max_attempts = 8) {
    if (tgt.empty() || src.size() != tgt.size() + 2)
        throw ShapeError("generate_map: source must have two more summands than target");
    if (!degree_pattern_admissible(src, tgt))
        throw GenerationFailed("generate_map: some source summand maps to zero for every target twist");
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        GeneratedMap<F> g;
        g.map = std::make_unique<GradedMap<F>>(random_map(field, src, tgt, rng));
        g.ranks = std::make_unique<DegreeRanks<F>>(field, *g.map);
        g.attempts = attempt;
        try {
            coker_dims(*g.ranks);
            return g;
        } catch (const NotFiniteLength&) {
        }
    }
    throw GenerationFailed("generate_map: no finite-length cokernel after " + std::to_string(max_attempts) +
                           " attempts");
}

template <Field F>
std::vector<FormTerms> entry_terms(const F& field, const GradedMap<F>& map) {
    std::vector<FormTerms> out;
    for (const auto& f : map.entries()) out.push_back(form_terms(field, f));
    return out;
}

template <Field F>
Report analyze(const F& field, const Instance& inst) {
    validate(inst);
    std::mt19937_64 rng(inst.seed);
    Report report;
    report.seed = inst.seed;
    if (inst.entries) {
        const auto map = explicit_map(field, inst);
        return analyze_map(field, map, rng, inst.samples, std::move(report));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = generate_map(field, inst.source, inst.target, rng);
    report.generation_attempts = g.attempts;
    report.generated = entry_terms(field, *g.map);
    report.timings.emplace_back("generate", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return analyze_ranks(*g.ranks, rng, inst.samples, std::move(report));
}

/// Dispatches on the instance's field.
inline Report analyze(const Instance& inst) {
    if (inst.field.kind == FieldSpec::Kind::Rational) return analyze(RationalField{}, inst);
    return analyze(PrimeField(inst.field.p), inst);
}

// ---------------------------------------------------------------------------
// Complete intersections

/// Koszul instance of three random forms of degrees d1, d2, d3. Forms that
/// fail to be a regular sequence are redrawn up to `max_attempts` times.
template <Field F>
Report ci_mode(const F& field, int d1, int d2, int d3, std::uint64_t seed, std::size_t samples = 3,
               int max_attempts = 8) {
    for (int d : {d1, d2, d3})
        if (d < 1) throw DegreeError("ci: degrees must be at least 1");
    std::mt19937_64 rng(seed);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const auto map = ci_instance(random_homog(field, d1, rng), random_homog(field, d2, rng),
                                     random_homog(field, d3, rng));
        const DegreeRanks<F> ranks(field, map);
        try {
            coker_dims(ranks);
        } catch (const NotFiniteLength&) {
            if (attempt == max_attempts) throw;
            continue;
        }
        Report report;
        report.seed = seed;
        report.generation_attempts = attempt;
        report.generated = entry_terms(field, map);
        return analyze_ranks(ranks, rng, samples, std::move(report));
    }
    throw NotFiniteLength("ci: no regular sequence found");
}

// ---------------------------------------------------------------------------
// Random corpora

struct FuzzConfig {
    std::size_t count = 50;
    std::size_t max_n = 4;
    int max_twist = 8;
    std::uint64_t seed = 0;
    /// Degree patterns whose top degree exceeds this are redrawn. Unset by
    /// default: with twists up to 8 the largest patterns still finish in
    /// seconds.
    std::optional<int> max_top;
    std::size_t samples = 3;
    /// Worker threads; 0 means LEFSCHETZ_THREADS or the hardware default.
    unsigned threads = 0;
};

struct FuzzFailure {
    std::string check;
    std::string message;
};

struct FuzzCase {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    TwistSequence source;
    TwistSequence target;
    std::optional<Report> report;
    std::vector<FuzzFailure> failures;
    double seconds = 0;

    bool ok() const { return failures.empty(); }
};

struct FuzzSummary {
    FuzzConfig config;
    std::vector<FuzzCase> cases;

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const FuzzCase& c) { return !c.ok(); }));
    }
    bool ok() const { return failures() == 0; }
    std::size_t count_class(Stability s) const {
        return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [s](const FuzzCase& c) {
            return c.report && c.report->bundle_class.variant == s;
        }));
    }
};

/// SplitMix64 step; per-case seeds that do not depend on scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// A degree pattern whose four-term sum is a plausible Hilbert function:
/// non-negative, not identically zero, vanishing past the top degree.
inline bool plausible_pattern(const TwistSequence& src, const TwistSequence& tgt) {
    if (!degree_pattern_admissible(src, tgt)) return false;
    const int top = top_degree(src, tgt);
    bool nonzero = false;
    for (int d = tgt.min(); d <= std::max(top, tgt.max()) + 1; ++d) {
        const auto h = expected_hilbert(src, tgt, d);
        if (h < 0 || (d > top && h != 0)) return false;
        nonzero = nonzero || h > 0;
    }
    return nonzero;
}

/// Draws n in [1, max_n], target twists in [0, max_twist] and source twists
/// in [min target, max_twist], both sorted descending, until the pattern is
/// plausible and within max_top.
inline std::pair<TwistSequence, TwistSequence> draw_pattern(const FuzzConfig& cfg, std::mt19937_64& rng) {
    for (;;) {
        const auto n = static_cast<std::size_t>(uniform_in(rng, 1, static_cast<std::int64_t>(cfg.max_n)));
        std::vector<int> b(n), a(n + 2);
        for (auto& x : b) x = static_cast<int>(uniform_in(rng, 0, cfg.max_twist));
        const int bmin = *std::min_element(b.begin(), b.end());
        for (auto& x : a) x = static_cast<int>(uniform_in(rng, bmin, cfg.max_twist));
        std::sort(a.rbegin(), a.rend());
        std::sort(b.rbegin(), b.rend());
        TwistSequence src(std::move(a)), tgt(std::move(b));
        if ((!cfg.max_top || top_degree(src, tgt) <= *cfg.max_top) && plausible_pattern(src, tgt)) return {src, tgt};
    }
}

namespace detail {

inline void fuzz_case(const FuzzConfig& cfg, FuzzCase& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const PrimeField field;
    std::mt19937_64 rng(out.seed);
    auto fail = [&](std::string check, std::string msg) { out.failures.push_back({std::move(check), std::move(msg)}); };
    try {
        // Patterns with no finite-length map are redrawn; the cap only guards
        // against a generator that never succeeds.
        std::optional<GeneratedMap<PrimeField>> g;
        for (int tries = 0; !g && tries < 64; ++tries) {
            std::tie(out.source, out.target) = draw_pattern(cfg, rng);
            try {
                g = generate_map(field, out.source, out.target, rng);
            } catch (const GenerationFailed&) {
            }
        }
        if (!g) {
            fail("generation", "no finite-length instance after 64 degree patterns");
        } else {
            const auto r = analyze_ranks(*g->ranks, rng, cfg.samples);
            if (!r.checks.palindrome) fail("palindrome", "Hilbert function is not symmetric");
            if (!r.checks.euler) fail("euler", "h0 - h1 + h2 differs from chi");
            if (!r.checks.splitting) fail("splitting", "computed splitting differs from predicted");
            if (!r.checks.ranges) fail("ranges", discrepancy_summary(r.concordance));
            if (!r.verdict.wlp) fail("wlp", "a multiplication map has neither full rank");
            if (!r.unimodal) fail("unimodal", "Hilbert function is not unimodal");
            if (r.checks.h0_formula && !*r.checks.h0_formula) fail("h0-formula", "h0 below the index differs from the binomial");
            out.report = r;
        }
    } catch (const NotFiniteLength& e) {
        fail("alternating-sum", e.what());
    } catch (const ConsistencyFailure& e) {
        fail("consistency", e.what());
    } catch (const TheoremViolation& e) {
        fail("theorem", e.what());
    } catch (const LineDegenerate& e) {
        fail("line", e.what());
    } catch (const std::exception& e) {
        fail("error", e.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("LEFSCHETZ_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace detail

/// Runs `count` seeded random instances over GF(32003). Case i uses the seed
/// mix_seed(seed, i), so results do not depend on the thread count.
inline FuzzSummary fuzz(const FuzzConfig& cfg) {
    if (cfg.max_n < 1 || cfg.max_twist < 0) throw ValidationError("fuzz: need max_n >= 1 and max_twist >= 0");
    FuzzSummary summary;
    summary.config = cfg;
    summary.cases.resize(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        summary.cases[i].index = i;
        summary.cases[i].seed = mix_seed(cfg.seed, i);
    }

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cfg.count;) detail::fuzz_case(cfg, summary.cases[i]);
    };
    const unsigned workers = detail::worker_count(cfg.threads, cfg.count);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return summary;
}

inline nlohmann::ordered_json to_json(const FuzzSummary& s, bool with_timings = false) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["config"] = {{"count", s.config.count},
                     {"maxN", s.config.max_n},
                     {"maxTwist", s.config.max_twist},
                     {"maxTop", s.config.max_top ? nlohmann::ordered_json(*s.config.max_top) : nlohmann::ordered_json(nullptr)},
                     {"seed", s.config.seed},
                     {"samples", s.config.samples}};
    doc["classes"] = {{"Stable", s.count_class(Stability::Stable)},
                      {"StrictlySemistable", s.count_class(Stability::StrictlySemistable)},
                      {"Unstable", s.count_class(Stability::Unstable)}};
    doc["failures"] = s.failures();
    auto cases = ordered_json::array();
    for (const auto& c : s.cases) {
        ordered_json j;
        j["index"] = c.index;
        j["seed"] = c.seed;
        j["source"] = c.source.values();
        j["target"] = c.target.values();
        if (c.report) {
            j["class"] = {{"variant", to_string(c.report->bundle_class.variant)}, {"k", c.report->bundle_class.k}};
            j["hilbert"] = {{"offset", c.report->hilbert.offset()}, {"dims", c.report->hilbert.dims()}};
            j["splitting"] = {c.report->computed.e, c.report->computed.f};
            j["wlp"] = c.report->verdict.wlp;
        }
        auto fails = ordered_json::array();
        for (const auto& f : c.failures) fails.push_back({{"check", f.check}, {"message", f.message}});
        j["failures"] = std::move(fails);
        if (with_timings) j["seconds"] = c.seconds;
        cases.push_back(std::move(j));
    }
    doc["cases"] = std::move(cases);
    return doc;
}

inline std::string to_text(const FuzzSummary& s, bool with_timings = false) {
    std::ostringstream os;
    os << "fuzz: " << s.cases.size() << " instances, n <= " << s.config.max_n << ", twists in [0, "
       << s.config.max_twist << ']';
    if (s.config.max_top) os << ", top degree <= " << *s.config.max_top;
    os << ", seed " << s.config.seed << '\n';
    for (const auto& c : s.cases) {
        os << "  #" << c.index << ' ' << detail::tuple_string(c.source) << " -> " << detail::tuple_string(c.target);
        if (c.report) {
            os << "  " << to_string(c.report->bundle_class.variant);
            if (c.report->bundle_class.variant == Stability::Unstable) os << " k=" << c.report->bundle_class.k;
            os << "  length " << c.report->hilbert.total() << "  wlp " << (c.report->verdict.wlp ? "yes" : "no");
        }
        if (with_timings) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %.3f s", c.seconds);
            os << buf;
        }
        os << (c.ok() ? "" : "  FAILED") << '\n';
        for (const auto& f : c.failures) os << "      " << f.check << ": " << f.message << '\n';
    }
    os << "classes: Stable " << s.count_class(Stability::Stable) << ", StrictlySemistable "
       << s.count_class(Stability::StrictlySemistable) << ", Unstable " << s.count_class(Stability::Unstable) << '\n';
    os << "failures: " << s.failures() << '\n';
    return os.str();
}

}  // namespace lefschetz

#endif  // LEFSCHETZ_PIPELINE_HPP
