// SPDX-License-Identifier: Apache-2.0
//
// octarray - circular-aperture phased-array synthesis and thinning toolkit
// Copyright 2026 octarray developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Batch front end. All array math lives behind the C API in liboctarray;
// this program only assembles config JSON from flags and reports results.

#include <octarray.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 config error, 3 degenerate aperture,
// 4 sweep finished with failed radii, 1 anything else.
constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_config = 2;
constexpr int exit_degenerate = 3;
constexpr int exit_partial = 4;

int exit_code_for(octarray_status rc) {
    switch (rc) {
    case OCTARRAY_OK:
        return exit_ok;
    case OCTARRAY_E_INVALID_CONFIG:
        return exit_config;
    case OCTARRAY_E_DEGENERATE_APERTURE:
        return exit_degenerate;
    default:
        return exit_error;
    }
}

struct Overrides {
    std::string config_path;
    std::optional<double> radius;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> repeats;
    std::optional<std::string> out;
    std::optional<std::uint64_t> workers;
    std::optional<double> sll_req;
    std::optional<double> bw_req;
    std::optional<double> alpha;
};

void add_common_flags(CLI::App *cmd, Overrides &ov) {
    cmd->add_option("--config", ov.config_path, "Experiment config JSON file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--radius", ov.radius, "Aperture radius in wavelengths");
    cmd->add_option("--seed", ov.seed, "Master seed (run i uses seed + i)");
    cmd->add_option("--repeats", ov.repeats, "Optimization runs per configuration");
    cmd->add_option("--out", ov.out, "Output directory for run artifacts");
    cmd->add_option("--workers", ov.workers, "Worker threads across runs");
    cmd->add_option("--sll-req", ov.sll_req, "Sidelobe requirement in dB (negative)");
    cmd->add_option("--bw-req", ov.bw_req, "Beamwidth requirement in degrees");
    cmd->add_option("--alpha", ov.alpha, "Taper profile parameter");
}

/// Loads the config file (or starts from {}) and applies flag overrides.
/// Flags win over file values; everything else keeps library defaults.
json build_config(const Overrides &ov, std::string &error) {
    json cfg = json::object();
    if (!ov.config_path.empty()) {
        std::ifstream in(ov.config_path);
        if (!in) {
            error = "cannot open config file " + ov.config_path;
            return {};
        }
        try {
            in >> cfg;
        } catch (const json::parse_error &e) {
            error = "config file " + ov.config_path + " is not valid JSON: " + e.what();
            return {};
        }
        if (!cfg.is_object()) {
            error = "config file " + ov.config_path + " must contain a JSON object";
            return {};
        }
    }
    if (ov.radius)
        cfg["geometry"]["radius_lambda"] = *ov.radius;
    if (ov.seed)
        cfg["pso"]["seed"] = *ov.seed;
    if (ov.repeats)
        cfg["repeats"] = *ov.repeats;
    if (ov.out)
        cfg["output_dir"] = *ov.out;
    if (ov.workers)
        cfg["workers"] = *ov.workers;
    if (ov.sll_req)
        cfg["fitness"]["sll_req_db"] = *ov.sll_req;
    if (ov.bw_req)
        cfg["fitness"]["bw_req_deg"] = *ov.bw_req;
    if (ov.alpha)
        cfg["taper"]["alpha"] = *ov.alpha;
    return cfg;
}

int report(octarray_status rc, char *result) {
    if (rc != OCTARRAY_OK) {
        std::cerr << "octarray: error (" << octarray_status_name(rc)
                  << "): " << octarray_last_error() << "\n";
        return exit_code_for(rc);
    }
    if (result) {
        std::cout << result;
        octarray_string_free(result);
    }
    return exit_ok;
}

int run_op(octarray_status (*op)(const char *, char **), const Overrides &ov) {
    std::string error;
    const json cfg = build_config(ov, error);
    if (!error.empty()) {
        std::cerr << "octarray: " << error << "\n";
        return exit_config;
    }
    char *result = nullptr;
    const octarray_status rc = op(cfg.dump().c_str(), &result);
    return report(rc, result);
}

int run_sweep_op(const Overrides &ov) {
    std::string error;
    const json cfg = build_config(ov, error);
    if (!error.empty()) {
        std::cerr << "octarray: " << error << "\n";
        return exit_config;
    }
    char *result = nullptr;
    const octarray_status rc = octarray_run_sweep(cfg.dump().c_str(), &result);
    if (rc != OCTARRAY_OK)
        return report(rc, result);

    // A sweep that completed but skipped radii is a partial success.
    int code = exit_ok;
    try {
        const json doc = json::parse(result);
        if (doc.contains("failed_radii") && !doc.at("failed_radii").empty()) {
            code = exit_partial;
            std::cerr << "octarray: sweep finished with " << doc.at("failed_radii").size()
                      << " failed radius/radii; see summary.json\n";
        }
    } catch (const json::exception &) {
        // result is printed below regardless; parsing is best-effort
    }
    std::cout << result;
    octarray_string_free(result);
    return code;
}

int run_pattern_op(const Overrides &ov, const std::string &activation) {
    std::string error;
    const json cfg = build_config(ov, error);
    if (!error.empty()) {
        std::cerr << "octarray: " << error << "\n";
        return exit_config;
    }
    char *result = nullptr;
    const octarray_status rc =
        octarray_run_pattern(cfg.dump().c_str(), activation.c_str(), &result);
    return report(rc, result);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{std::string("octarray ") + octarray_version() +
                 " - circular-aperture array synthesis, thinning and benchmarking"};
    app.require_subcommand(1);

    Overrides ov_synth, ov_taper, ov_thin, ov_sweep, ov_pattern;
    std::string activation_path;

    auto *synth = app.add_subcommand(
        "synth", "Build the aperture layout and export element positions");
    add_common_flags(synth, ov_synth);

    auto *taper = app.add_subcommand(
        "taper", "Tapered reference excitation: weights, cut and metrics");
    add_common_flags(taper, ov_taper);

    auto *thin = app.add_subcommand(
        "thin", "Optimize a thinned activation against SLL/beamwidth requirements");
    add_common_flags(thin, ov_thin);

    auto *sweep = app.add_subcommand(
        "sweep", "Thin across a radius sweep and export the summary table");
    add_common_flags(sweep, ov_sweep);

    auto *pattern = app.add_subcommand(
        "pattern", "Re-evaluate cuts/metrics for a stored activation CSV");
    add_common_flags(pattern, ov_pattern);
    pattern->add_option("--activation", activation_path, "Activation CSV (weights file)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        // Fold CLI11's per-error exit codes into the documented contract:
        // anything wrong with the invocation or its files is a config error.
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    if (synth->parsed())
        return run_op(&octarray_run_synth, ov_synth);
    if (taper->parsed())
        return run_op(&octarray_run_taper, ov_taper);
    if (thin->parsed())
        return run_op(&octarray_run_single, ov_thin);
    if (sweep->parsed())
        return run_sweep_op(ov_sweep);
    if (pattern->parsed())
        return run_pattern_op(ov_pattern, activation_path);
    return exit_config;
}
