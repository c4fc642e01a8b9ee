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

#include "octarray/experiment.hpp"
#include "octarray/error.hpp"
#include "octarray/io.hpp"
#include "octarray/metrics.hpp"
#include "octarray/taper.hpp"
#include "octarray/version.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace octarray {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad_config(const std::string &path, const std::string &what) {
    throw InvalidConfigError("config key '" + path + "': " + what);
}

void reject_unknown_keys(const json &j, const std::string &path,
                         std::initializer_list<const char *> allowed) {
    for (const auto &item : j.items()) {
        bool known = false;
        for (const char *k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            bad_config(path.empty() ? item.key() : path + "." + item.key(),
                       "unknown key (typo?)");
    }
}

json expect_object(const json &j, const std::string &path) {
    if (!j.is_object())
        bad_config(path, "expected a JSON object");
    return j;
}

template <typename T>
void read_field(const json &j, const char *key, const std::string &path, T &target) {
    if (!j.contains(key))
        return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception &e) {
        bad_config(path + "." + key, e.what());
    }
}

void read_bool(const json &j, const char *key, const std::string &path, bool &target) {
    if (!j.contains(key))
        return;
    if (!j.at(key).is_boolean())
        bad_config(path + "." + key, "expected true or false");
    target = j.at(key).get<bool>();
}

void read_size(const json &j, const char *key, const std::string &path, std::size_t &target) {
    if (!j.contains(key))
        return;
    if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
        bad_config(path + "." + key, "expected a non-negative integer");
    const auto v = j.at(key).get<long long>();
    if (v < 0)
        bad_config(path + "." + key, "expected a non-negative integer");
    target = static_cast<std::size_t>(v);
}

void parse_geometry(const json &j, GeometryConfig &g) {
    expect_object(j, "geometry");
    reject_unknown_keys(j, "geometry",
                        {"radius_lambda", "dx_lambda", "dy_lambda", "frequency_hz",
                         "grid_scale", "half_cell_offset", "center_optimizable"});
    read_field(j, "radius_lambda", "geometry", g.radius_lambda);
    read_field(j, "dx_lambda", "geometry", g.dx_lambda);
    read_field(j, "dy_lambda", "geometry", g.dy_lambda);
    read_field(j, "frequency_hz", "geometry", g.frequency_hz);
    read_field(j, "grid_scale", "geometry", g.grid_scale);
    read_bool(j, "half_cell_offset", "geometry", g.half_cell_offset);
    read_bool(j, "center_optimizable", "geometry", g.center_optimizable);
}

void parse_pattern(const json &j, PatternConfig &p) {
    expect_object(j, "pattern");
    reject_unknown_keys(
        j, "pattern",
        {"element_mode", "cut_step_deg", "grid_step_deg", "floor_db", "cut_phi_deg"});
    if (j.contains("element_mode")) {
        const auto mode = j.at("element_mode").get<std::string>();
        if (mode == "separable")
            p.element_mode = ElementMode::separable;
        else if (mode == "azimuth_symmetric")
            p.element_mode = ElementMode::azimuth_symmetric;
        else
            bad_config("pattern.element_mode",
                       "expected 'separable' or 'azimuth_symmetric', got '" + mode + "'");
    }
    read_field(j, "cut_step_deg", "pattern", p.cut_step_deg);
    read_field(j, "grid_step_deg", "pattern", p.grid_step_deg);
    read_field(j, "floor_db", "pattern", p.floor_db);
    read_field(j, "cut_phi_deg", "pattern", p.cut_phi_deg);
}

void parse_fitness(const json &j, FitnessSpec &f, bool &bw_auto) {
    expect_object(j, "fitness");
    reject_unknown_keys(j, "fitness", {"sll_req_db", "bw_req_deg", "w1", "w2", "penalty_mode"});
    read_field(j, "sll_req_db", "fitness", f.sll_req_db);
    if (j.contains("bw_req_deg")) {
        bw_auto = false;
        read_field(j, "bw_req_deg", "fitness", f.bw_req_deg);
    }
    read_field(j, "w1", "fitness", f.w1);
    read_field(j, "w2", "fitness", f.w2);
    if (j.contains("penalty_mode")) {
        const auto mode = j.at("penalty_mode").get<std::string>();
        if (mode == "hinge")
            f.mode = PenaltyMode::hinge;
        else if (mode == "square")
            f.mode = PenaltyMode::square;
        else
            bad_config("fitness.penalty_mode", "expected 'hinge' or 'square', got '" + mode + "'");
    }
}

void parse_pso(const json &j, PsoConfig &p) {
    expect_object(j, "pso");
    reject_unknown_keys(j, "pso",
                        {"swarm_size", "max_iters", "omega", "c1", "c2", "chi", "v_max",
                         "fitness_threshold", "binarization", "seed"});
    read_size(j, "swarm_size", "pso", p.swarm_size);
    read_size(j, "max_iters", "pso", p.max_iters);
    read_field(j, "omega", "pso", p.omega);
    read_field(j, "c1", "pso", p.c1);
    read_field(j, "c2", "pso", p.c2);
    read_field(j, "chi", "pso", p.chi);
    read_field(j, "v_max", "pso", p.v_max);
    read_field(j, "fitness_threshold", "pso", p.fitness_threshold);
    if (j.contains("binarization")) {
        const auto mode = j.at("binarization").get<std::string>();
        if (mode == "threshold")
            p.binarization = Binarization::threshold;
        else if (mode == "sigmoid")
            p.binarization = Binarization::sigmoid;
        else
            bad_config("pso.binarization", "expected 'threshold' or 'sigmoid', got '" + mode + "'");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            bad_config("pso.seed", "expected a non-negative integer");
        const auto v = j.at("seed").get<long long>();
        if (v < 0)
            bad_config("pso.seed", "expected a non-negative integer");
        p.seed = static_cast<std::uint64_t>(v);
    }
}

void parse_sweep(const json &j, std::vector<double> &radii) {
    expect_object(j, "sweep");
    reject_unknown_keys(j, "sweep", {"radii_lambda"});
    if (!j.contains("radii_lambda"))
        return;
    const auto &arr = j.at("radii_lambda");
    if (!arr.is_array() || arr.empty())
        bad_config("sweep.radii_lambda", "expected a non-empty array of radii");
    radii.clear();
    for (const auto &v : arr) {
        if (!v.is_number())
            bad_config("sweep.radii_lambda", "expected numbers");
        radii.push_back(v.get<double>());
    }
}

std::string iso8601_now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void ExperimentConfig::validate() const {
    geometry.validate();
    pattern.validate();
    pso.validate();
    if (!bw_req_auto)
        fitness.validate();
    if (!(taper_alpha >= 0.0) || !std::isfinite(taper_alpha))
        throw InvalidConfigError("taper.alpha must be finite and non-negative");
    if (repeats == 0)
        throw InvalidConfigError("repeats must be at least 1");
    if (sweep_radii.empty())
        throw InvalidConfigError("sweep.radii_lambda must not be empty");
    for (double r : sweep_radii)
        if (!(r > 0.0) || !std::isfinite(r))
            throw InvalidConfigError("sweep radii must be positive");
    if (output_dir.empty())
        throw InvalidConfigError("output_dir must not be empty");
}

ExperimentConfig parse_experiment_config(const json &j) {
    if (!j.is_object())
        throw InvalidConfigError("config root must be a JSON object");
    reject_unknown_keys(j, "",
                        {"geometry", "pattern", "fitness", "taper", "pso", "sweep", "repeats",
                         "output_dir", "emit_grid", "emit_sweep_grids", "workers"});

    ExperimentConfig cfg;
    if (j.contains("geometry"))
        parse_geometry(j.at("geometry"), cfg.geometry);
    if (j.contains("pattern"))
        parse_pattern(j.at("pattern"), cfg.pattern);
    if (j.contains("fitness"))
        parse_fitness(j.at("fitness"), cfg.fitness, cfg.bw_req_auto);
    if (j.contains("taper")) {
        expect_object(j.at("taper"), "taper");
        reject_unknown_keys(j.at("taper"), "taper", {"alpha"});
        read_field(j.at("taper"), "alpha", "taper", cfg.taper_alpha);
    }
    if (j.contains("pso"))
        parse_pso(j.at("pso"), cfg.pso);
    if (j.contains("sweep"))
        parse_sweep(j.at("sweep"), cfg.sweep_radii);
    read_size(j, "repeats", "", cfg.repeats);
    read_field(j, "output_dir", "", cfg.output_dir);
    read_bool(j, "emit_grid", "", cfg.emit_grid);
    read_bool(j, "emit_sweep_grids", "", cfg.emit_sweep_grids);
    read_size(j, "workers", "", cfg.workers);

    cfg.validate();
    return cfg;
}

ExperimentConfig parse_experiment_config_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_experiment_config(j);
}

json experiment_config_json(const ExperimentConfig &cfg) {
    json j;
    j["geometry"] = {{"radius_lambda", cfg.geometry.radius_lambda},
                     {"dx_lambda", cfg.geometry.dx_lambda},
                     {"dy_lambda", cfg.geometry.dy_lambda},
                     {"frequency_hz", cfg.geometry.frequency_hz},
                     {"grid_scale", cfg.geometry.grid_scale},
                     {"half_cell_offset", cfg.geometry.half_cell_offset},
                     {"center_optimizable", cfg.geometry.center_optimizable}};
    j["pattern"] = {{"element_mode", cfg.pattern.element_mode == ElementMode::separable
                                         ? "separable"
                                         : "azimuth_symmetric"},
                    {"cut_step_deg", cfg.pattern.cut_step_deg},
                    {"grid_step_deg", cfg.pattern.grid_step_deg},
                    {"floor_db", cfg.pattern.floor_db},
                    {"cut_phi_deg", cfg.pattern.cut_phi_deg}};
    j["fitness"] = {{"sll_req_db", cfg.fitness.sll_req_db},
                    {"w1", cfg.fitness.w1},
                    {"w2", cfg.fitness.w2},
                    {"penalty_mode",
                     cfg.fitness.mode == PenaltyMode::hinge ? "hinge" : "square"}};
    if (!cfg.bw_req_auto)
        j["fitness"]["bw_req_deg"] = cfg.fitness.bw_req_deg;
    j["taper"] = {{"alpha", cfg.taper_alpha}};
    j["pso"] = {{"swarm_size", cfg.pso.swarm_size},
                {"max_iters", cfg.pso.max_iters},
                {"omega", cfg.pso.omega},
                {"c1", cfg.pso.c1},
                {"c2", cfg.pso.c2},
                {"chi", cfg.pso.chi},
                {"v_max", cfg.pso.v_max},
                {"fitness_threshold", cfg.pso.fitness_threshold},
                {"binarization",
                 cfg.pso.binarization == Binarization::threshold ? "threshold" : "sigmoid"},
                {"seed", cfg.pso.seed}};
    j["sweep"] = {{"radii_lambda", cfg.sweep_radii}};
    j["repeats"] = cfg.repeats;
    j["output_dir"] = cfg.output_dir;
    j["emit_grid"] = cfg.emit_grid;
    j["emit_sweep_grids"] = cfg.emit_sweep_grids;
    j["workers"] = cfg.workers;
    return j;
}

// ---------------------------------------------------------------------------
// shared run machinery
// ---------------------------------------------------------------------------

namespace {

/// Runs fn(0..n-1) on up to `workers` threads; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

void write_meta(const fs::path &dir) {
    json meta;
    meta["created_utc"] = iso8601_now_utc();
    meta["tool_version"] = OCTARRAY_VERSION;
    atomic_write(dir / "meta.json", meta.dump(2) + "\n");
}

void finalize_dir(const fs::path &dir) {
    write_meta(dir);
    atomic_write(dir / "manifest.json", manifest_json(dir));
}

json layout_summary(const ArrayLayout &layout) {
    return json{{"n_total", layout.n_total()},
                {"sector_size", layout.sector_size},
                {"chromosome_len", layout.chromosome_len},
                {"radius_lambda", layout.config.radius_lambda}};
}

struct TaperBenchmark {
    std::vector<double> weights;
    PatternCut cut;
    CutMetrics metrics;
};

TaperBenchmark taper_benchmark(const ArrayLayout &layout, const ExperimentConfig &cfg) {
    TaperBenchmark tb;
    tb.weights = radial_taper(layout, cfg.taper_alpha);
    tb.cut = compute_cut(layout, tb.weights, cfg.pattern);
    tb.metrics = extract_metrics(tb.cut.theta_deg, tb.cut.mag_db, cfg.pattern.floor_db);
    return tb;
}

json run_row(const PsoResult &r) {
    json row;
    row["seed"] = r.seed;
    row["fitness"] = r.best_fitness;
    row["sll_db"] = r.sll_db;
    row["hpbw_deg"] = r.hpbw_deg;
    row["active_count"] = r.active_count;
    row["iterations"] = r.iterations;
    row["converged"] = r.converged;
    return row;
}

std::string metrics_csv_text(const std::vector<std::vector<std::string>> &rows) {
    return csv_table({"kind", "radius_lambda", "n_total", "chromosome_len", "active_count",
                      "sll_db", "hpbw_deg", "fitness", "seed", "iterations", "converged"},
                     rows);
}

std::vector<std::string> metrics_row(const std::string &kind, const ArrayLayout &layout,
                                     std::size_t active, double sll, double hpbw,
                                     const PsoResult *run) {
    std::vector<std::string> row{kind,
                                 format_double(layout.config.radius_lambda),
                                 std::to_string(layout.n_total()),
                                 std::to_string(layout.chromosome_len),
                                 std::to_string(active),
                                 format_double(sll),
                                 format_double(hpbw),
                                 "",
                                 "",
                                 "",
                                 ""};
    if (run) {
        row[7] = format_double(run->best_fitness);
        row[8] = std::to_string(run->seed);
        row[9] = std::to_string(run->iterations);
        row[10] = run->converged ? "true" : "false";
    }
    return row;
}

/// Full thinning pipeline writing into an already-resolved directory.
json run_thin_into(const ExperimentConfig &cfg, const fs::path &dir, bool emit_grid) {
    const ArrayLayout layout = build_layout(cfg.geometry);
    const TaperBenchmark taper = taper_benchmark(layout, cfg);

    FitnessSpec spec = cfg.fitness;
    if (cfg.bw_req_auto)
        spec.bw_req_deg = taper.metrics.hpbw_deg;
    spec.validate();

    const CutEvaluator evaluator(layout, cfg.pattern);

    // Independent repeats: run i is seeded master + i and owns its particle
    // streams, so the set of results does not depend on worker count.
    std::vector<PsoResult> runs(cfg.repeats);
    parallel_for(cfg.repeats, cfg.workers, [&](std::size_t i) {
        PsoConfig pso = cfg.pso;
        pso.seed = cfg.pso.seed + i;
        runs[i] = run_pso(layout, evaluator, spec, pso);
    });

    // Best by fitness; ties resolve to the earliest seed for determinism.
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].best_fitness < runs[best_idx].best_fitness)
            best_idx = i;
    const PsoResult &best = runs[best_idx];

    const auto best_weights = layout.expand_chromosome(best.best_chromosome);
    const PatternCut thinned_cut = compute_cut(layout, best_weights, cfg.pattern);

    // Uniform (all-on) reference row; shares the taper's angle grid too.
    const std::vector<double> uniform(layout.n_total(), 1.0);
    const PatternCut uniform_cut = compute_cut(layout, uniform, cfg.pattern);
    const CutMetrics uniform_metrics =
        extract_metrics(uniform_cut.theta_deg, uniform_cut.mag_db, cfg.pattern.floor_db);

    atomic_write(dir / "layout.csv", layout_csv(layout));
    atomic_write(dir / "taper_weights.csv", weights_csv(layout, taper.weights));
    atomic_write(dir / "activation.csv", weights_csv(layout, best_weights));
    atomic_write(dir / "cut_taper.csv", cut_csv(taper.cut));
    atomic_write(dir / "cut_thinned.csv", cut_csv(thinned_cut));
    atomic_write(dir / "cut_uniform.csv", cut_csv(uniform_cut));
    if (emit_grid)
        atomic_write(dir / "grid_thinned.csv",
                     grid_csv(compute_grid(layout, best_weights, cfg.pattern)));

    std::vector<std::vector<std::string>> mrows;
    mrows.push_back(metrics_row("uniform", layout, layout.n_total(), uniform_metrics.sll_db,
                                uniform_metrics.hpbw_deg, nullptr));
    mrows.push_back(metrics_row("taper", layout, layout.n_total(), taper.metrics.sll_db,
                                taper.metrics.hpbw_deg, nullptr));
    for (const auto &r : runs)
        mrows.push_back(metrics_row("thinned", layout, r.active_count, r.sll_db, r.hpbw_deg, &r));
    atomic_write(dir / "metrics.csv", metrics_csv_text(mrows));

    std::vector<std::vector<std::string>> trows;
    for (std::size_t it = 0; it < best.fitness_trace.size(); ++it)
        trows.push_back({std::to_string(it), format_double(best.fitness_trace[it])});
    atomic_write(dir / "trace.csv", csv_table({"iteration", "best_fitness"}, trows));

    json doc;
    doc["kind"] = "thin";
    doc["config"] = experiment_config_json(cfg);
    doc["layout"] = layout_summary(layout);
    doc["bw_req_deg"] = spec.bw_req_deg;
    doc["taper"] = {{"alpha", cfg.taper_alpha},
                    {"sll_db", taper.metrics.sll_db},
                    {"hpbw_deg", taper.metrics.hpbw_deg}};
    doc["uniform"] = {{"sll_db", uniform_metrics.sll_db},
                      {"hpbw_deg", uniform_metrics.hpbw_deg}};
    doc["runs"] = json::array();
    for (const auto &r : runs)
        doc["runs"].push_back(run_row(r));
    doc["best"] = run_row(best);
    doc["best"]["fill_ratio"] =
        static_cast<double>(best.active_count) / static_cast<double>(layout.n_total());
    atomic_write(dir / "run.json", doc.dump(2) + "\n");

    finalize_dir(dir);
    doc["artifacts"] = {{"dir", dir.string()}};
    return doc;
}

/// The standard figures for a sweep, as a standalone matplotlib script. The
/// tool only emits data and this script; rendering is up to the user.
const char *plot_script = R"PY(#!/usr/bin/env python3
"""Render the standard sweep figures from summary.csv (same directory).

Usage: python3 plot.py [--out-dir DIR]
Produces: sll_vs_elements.png, hpbw_vs_elements.png, cut_best.png
"""
import argparse
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_summary(path):
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row.get("status", "ok") != "ok":
                continue
            rows.append(row)
    rows.sort(key=lambda r: int(r["n_total"]))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default=os.path.dirname(os.path.abspath(__file__)))
    args = ap.parse_args()
    base = os.path.dirname(os.path.abspath(__file__))
    rows = read_summary(os.path.join(base, "summary.csv"))
    if not rows:
        sys.exit("summary.csv has no successful rows")

    n = [int(r["n_total"]) for r in rows]
    sll = [float(r["sll_db"]) for r in rows]
    tsll = [float(r["taper_sll_db"]) for r in rows]
    hpbw = [float(r["hpbw_deg"]) for r in rows]
    thpbw = [float(r["taper_hpbw_deg"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(n, sll, "o-", label="thinned (best run)")
    ax.plot(n, tsll, "s--", label="tapered reference")
    ax.set_xlabel("total elements")
    ax.set_ylabel("SLL (dB)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "sll_vs_elements.png"), dpi=150)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(n, hpbw, "o-", label="thinned (best run)")
    ax.plot(n, thpbw, "s--", label="tapered reference")
    ax.set_xlabel("total elements")
    ax.set_ylabel("HPBW (deg)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "hpbw_vs_elements.png"), dpi=150)

    # principal cuts of the largest aperture: thinned vs tapered
    rdir = os.path.join(base, rows[-1]["dir"])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for fname, label in (("cut_thinned.csv", "thinned"), ("cut_taper.csv", "tapered")):
        with open(os.path.join(rdir, fname), newline="") as fh:
            pts = [(float(r["theta_deg"]), float(r["mag_db"])) for r in csv.DictReader(fh)]
        peak = max(p[1] for p in pts)
        ax.plot([p[0] for p in pts], [p[1] - peak for p in pts], label=label, lw=0.8)
    ax.set_xlabel("theta (deg)")
    ax.set_ylabel("normalized pattern (dB)")
    ax.set_ylim(-60, 2)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "cut_best.png"), dpi=150)
    print("wrote 3 figures to", args.out_dir)


if __name__ == "__main__":
    main()
)PY";

} // namespace

// ---------------------------------------------------------------------------
// public runners
// ---------------------------------------------------------------------------

json run_synth(const ExperimentConfig &cfg) {
    cfg.validate();
    const ArrayLayout layout = build_layout(cfg.geometry);
    const fs::path dir = resolve_run_dir(cfg.output_dir);
    atomic_write(dir / "layout.csv", layout_csv(layout));

    json doc;
    doc["kind"] = "synth";
    doc["config"] = experiment_config_json(cfg);
    doc["layout"] = layout_summary(layout);
    atomic_write(dir / "run.json", doc.dump(2) + "\n");
    finalize_dir(dir);
    doc["artifacts"] = {{"dir", dir.string()}};
    return doc;
}

json run_taper(const ExperimentConfig &cfg) {
    cfg.validate();
    const ArrayLayout layout = build_layout(cfg.geometry);
    const TaperBenchmark taper = taper_benchmark(layout, cfg);
    const fs::path dir = resolve_run_dir(cfg.output_dir);

    atomic_write(dir / "layout.csv", layout_csv(layout));
    atomic_write(dir / "taper_weights.csv", weights_csv(layout, taper.weights));
    atomic_write(dir / "cut_taper.csv", cut_csv(taper.cut));
    std::vector<std::vector<std::string>> mrows{metrics_row(
        "taper", layout, layout.n_total(), taper.metrics.sll_db, taper.metrics.hpbw_deg,
        nullptr)};
    atomic_write(dir / "metrics.csv", metrics_csv_text(mrows));

    json doc;
    doc["kind"] = "taper";
    doc["config"] = experiment_config_json(cfg);
    doc["layout"] = layout_summary(layout);
    doc["taper"] = {{"alpha", cfg.taper_alpha},
                    {"sll_db", taper.metrics.sll_db},
                    {"hpbw_deg", taper.metrics.hpbw_deg}};
    atomic_write(dir / "run.json", doc.dump(2) + "\n");
    finalize_dir(dir);
    doc["artifacts"] = {{"dir", dir.string()}};
    return doc;
}

json run_single(const ExperimentConfig &cfg) {
    cfg.validate();
    const fs::path dir = resolve_run_dir(cfg.output_dir);
    return run_thin_into(cfg, dir, cfg.emit_grid);
}

json run_sweep(const ExperimentConfig &cfg) {
    cfg.validate();
    const fs::path dir = resolve_run_dir(cfg.output_dir);

    struct RadiusOutcome {
        json doc;
        std::string status = "ok";
        std::string subdir;
    };
    std::vector<RadiusOutcome> outcomes(cfg.sweep_radii.size());

    // Radii run sequentially; each radius parallelizes its repeats. A failed
    // radius is recorded and the sweep continues.
    for (std::size_t i = 0; i < cfg.sweep_radii.size(); ++i) {
        const double r = cfg.sweep_radii[i];
        ExperimentConfig sub = cfg;
        sub.geometry.radius_lambda = r;
        outcomes[i].subdir = "R" + format_double(r);
        try {
            const fs::path subdir = dir / outcomes[i].subdir;
            std::filesystem::create_directories(subdir);
            outcomes[i].doc = run_thin_into(sub, subdir, cfg.emit_sweep_grids);
        } catch (const Error &e) {
            outcomes[i].status = std::string(status_name(e.code())) + ": " + e.what();
        }
    }

    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    json failed = json::array();
    for (std::size_t i = 0; i < cfg.sweep_radii.size(); ++i) {
        const auto &oc = outcomes[i];
        std::vector<std::string> row(13, "");
        row[0] = format_double(cfg.sweep_radii[i]);
        row[11] = oc.status == "ok" ? "ok" : "failed";
        row[12] = oc.subdir;
        json jrow{{"radius_lambda", cfg.sweep_radii[i]},
                  {"status", oc.status},
                  {"dir", oc.subdir}};
        if (oc.status == "ok") {
            const auto &doc = oc.doc;
            const auto &best = doc.at("best");
            row[1] = std::to_string(doc.at("layout").at("n_total").get<std::size_t>());
            row[2] = std::to_string(doc.at("layout").at("chromosome_len").get<std::size_t>());
            row[3] = std::to_string(best.at("active_count").get<std::size_t>());
            row[4] = format_double(best.at("sll_db").get<double>());
            row[5] = format_double(best.at("hpbw_deg").get<double>());
            row[6] = format_double(best.at("fitness").get<double>());
            row[7] = std::to_string(best.at("seed").get<std::uint64_t>());
            row[8] = format_double(doc.at("taper").at("sll_db").get<double>());
            row[9] = format_double(doc.at("taper").at("hpbw_deg").get<double>());
            row[10] = format_double(doc.at("bw_req_deg").get<double>());
            jrow["n_total"] = doc.at("layout").at("n_total");
            jrow["chromosome_len"] = doc.at("layout").at("chromosome_len");
            jrow["best"] = best;
            jrow["taper"] = doc.at("taper");
            jrow["bw_req_deg"] = doc.at("bw_req_deg");
        } else {
            failed.push_back(jrow);
        }
        rows.push_back(row);
        jrows.push_back(jrow);
    }
    atomic_write(dir / "summary.csv",
                 csv_table({"radius_lambda", "n_total", "chromosome_len", "active_count",
                            "sll_db", "hpbw_deg", "fitness", "seed", "taper_sll_db",
                            "taper_hpbw_deg", "bw_req_deg", "status", "dir"},
                           rows));
    atomic_write(dir / "plot.py", plot_script);

    json doc;
    doc["kind"] = "sweep";
    doc["config"] = experiment_config_json(cfg);
    doc["rows"] = jrows;
    doc["failed_radii"] = failed;
    atomic_write(dir / "summary.json", doc.dump(2) + "\n");
    write_meta(dir);
    atomic_write(dir / "manifest.json", manifest_json(dir));
    doc["artifacts"] = {{"dir", dir.string()}};
    return doc;
}

json run_pattern(const ExperimentConfig &cfg, const std::string &activation_csv_path) {
    cfg.validate();
    std::ifstream in(activation_csv_path, std::ios::binary);
    if (!in)
        throw IoError("cannot open activation file " + activation_csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const ParsedActivation act = parse_weights_csv(buf.str());

    const ArrayLayout layout = layout_from_positions(act.x_lambda, act.y_lambda);
    const PatternCut cut = compute_cut(layout, act.weights, cfg.pattern);

    json metrics;
    try {
        metrics["sll_db"] = extract_sll(cut.theta_deg, cut.mag_db, cfg.pattern.floor_db);
    } catch (const Error &e) {
        metrics["sll_error"] = status_name(e.code());
    }
    try {
        metrics["hpbw_deg"] = extract_hpbw(cut.theta_deg, cut.mag_db, cfg.pattern.floor_db);
    } catch (const Error &e) {
        metrics["hpbw_error"] = status_name(e.code());
    }

    const fs::path dir = resolve_run_dir(cfg.output_dir);
    atomic_write(dir / "cut.csv", cut_csv(cut));
    if (cfg.emit_grid)
        atomic_write(dir / "grid.csv", grid_csv(compute_grid(layout, act.weights, cfg.pattern)));

    json doc;
    doc["kind"] = "pattern";
    doc["config"] = experiment_config_json(cfg);
    doc["n_elements"] = layout.n_total();
    doc["activation_file"] = activation_csv_path;
    doc["metrics"] = metrics;
    atomic_write(dir / "run.json", doc.dump(2) + "\n");
    finalize_dir(dir);
    doc["artifacts"] = {{"dir", dir.string()}};
    return doc;
}

} // namespace octarray
