// Copyright 2026 The lefschetz authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.
//
//   lefschetz analyze <file> [--json] [--field p|Q] [--seed N] [--samples N]
//   lefschetz fuzz --count N --max-n K --max-twist T --seed N
//   lefschetz ci d1 d2 d3 [--seed N]
//
// Exit status: 0 success, 2 invalid input, 3 a failed invariant or check.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <lefschetz/errors.hpp>
#include <lefschetz/instance.hpp>
#include <lefschetz/pipeline.hpp>
#include <lefschetz/report.hpp>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

struct Output {
    bool json = false;
    bool timings = false;
};

int emit(const lefschetz::Report& r, const Output& out) {
    if (out.json)
        std::cout << lefschetz::to_json(r, out.timings).dump(2) << '\n';
    else
        std::cout << lefschetz::to_text(r, out.timings);
    return r.ok() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert functions, bundle classification and weak Lefschetz checks for graded maps over K[x,y,z]"};
    app.require_subcommand(1);
    Output out;

    auto* analyze = app.add_subcommand("analyze", "Analyze one instance file");
    std::string file;
    std::optional<std::string> field_override;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::size_t> samples_override;
    analyze->add_option("file", file, "Instance JSON file")->required();
    analyze->add_option("--field", field_override, "Coefficient field: a prime, p (32003) or Q");
    analyze->add_option("--seed", seed_override, "Override the instance seed");
    analyze->add_option("--samples", samples_override, "Number of random linear forms")->check(CLI::PositiveNumber);
    analyze->add_flag("--json", out.json, "Print the report as JSON");
    analyze->add_flag("--timings", out.timings, "Include per-stage timings");

    auto* fuzz = app.add_subcommand("fuzz", "Analyze a seeded corpus of random instances");
    lefschetz::FuzzConfig cfg;
    fuzz->add_option("--count", cfg.count, "Number of instances")->capture_default_str();
    fuzz->add_option("--max-n", cfg.max_n, "Largest target rank n")->check(CLI::PositiveNumber)->capture_default_str();
    fuzz->add_option("--max-twist", cfg.max_twist, "Largest twist")->check(CLI::NonNegativeNumber)->capture_default_str();
    fuzz->add_option("--max-top", cfg.max_top, "Redraw patterns whose top degree of M exceeds this");
    fuzz->add_option("--seed", cfg.seed, "Corpus seed")->capture_default_str();
    fuzz->add_option("--threads", cfg.threads, "Worker threads (0: LEFSCHETZ_THREADS or all cores)");
    fuzz->add_flag("--json", out.json, "Print the summary as JSON");
    fuzz->add_flag("--timings", out.timings, "Include per-instance timings");

    auto* ci = app.add_subcommand("ci", "Complete intersection of three random forms");
    int degrees[3] = {0, 0, 0};
    std::uint64_t ci_seed = 0;
    std::string ci_field = "p";
    std::size_t ci_samples = 3;
    ci->add_option("d1", degrees[0], "Degree of the first form")->required();
    ci->add_option("d2", degrees[1], "Degree of the second form")->required();
    ci->add_option("d3", degrees[2], "Degree of the third form")->required();
    ci->add_option("--seed", ci_seed, "Seed")->capture_default_str();
    ci->add_option("--field", ci_field, "Coefficient field: a prime, p (32003) or Q")->capture_default_str();
    ci->add_option("--samples", ci_samples, "Number of random linear forms")->check(CLI::PositiveNumber);
    ci->add_flag("--json", out.json, "Print the report as JSON");
    ci->add_flag("--timings", out.timings, "Include per-stage timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*analyze) {
            auto inst = lefschetz::parse_instance(file);
            if (field_override) inst.field = lefschetz::parse_field_spec(*field_override);
            if (seed_override) inst.seed = *seed_override;
            if (samples_override) inst.samples = *samples_override;
            return emit(lefschetz::analyze(inst), out);
        }
        if (*fuzz) {
            const auto summary = lefschetz::fuzz(cfg);
            if (out.json)
                std::cout << lefschetz::to_json(summary, out.timings).dump(2) << '\n';
            else
                std::cout << lefschetz::to_text(summary, out.timings);
            return summary.ok() ? 0 : kExitInvariant;
        }
        if (*ci) {
            const auto spec = lefschetz::parse_field_spec(ci_field);
            const auto report =
                spec.kind == lefschetz::FieldSpec::Kind::Rational
                    ? lefschetz::ci_mode(lefschetz::RationalField{}, degrees[0], degrees[1], degrees[2], ci_seed, ci_samples)
                    : lefschetz::ci_mode(lefschetz::PrimeField(spec.p), degrees[0], degrees[1], degrees[2], ci_seed,
                                         ci_samples);
            return emit(report, out);
        }
    } catch (const lefschetz::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const lefschetz::InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    }
    return 0;
}
