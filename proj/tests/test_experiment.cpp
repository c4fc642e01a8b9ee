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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "octarray/error.hpp"
#include "octarray/experiment.hpp"
#include "octarray/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

using namespace octarray;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string &tag) {
    const fs::path p = fs::temp_directory_path() / ("octarray_exp_" + tag);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_message_contains(const std::string &text, const std::string &needle) {
    CHECK_MESSAGE(text.find(needle) != std::string::npos, "message '", text,
                  "' does not mention '", needle, "'");
}

template <typename Fn> std::string config_error_message(Fn &&fn) {
    try {
        fn();
    } catch (const InvalidConfigError &e) {
        return e.what();
    }
    FAIL("expected InvalidConfigError");
    return {};
}

/// Fast thinning config: small aperture, coarse grids, few iterations.
ExperimentConfig small_config(const std::string &out_dir) {
    ExperimentConfig cfg;
    cfg.geometry.radius_lambda = 4.0;
    cfg.pattern.cut_step_deg = 0.2;
    cfg.pattern.grid_step_deg = 5.0;
    cfg.pso.max_iters = 30;
    cfg.pso.seed = 7;
    cfg.repeats = 2;
    cfg.output_dir = out_dir;
    return cfg;
}

/// First CSV column of every data row, as raw text.
std::vector<std::string> first_column(const std::string &csv) {
    std::vector<std::string> out;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line))
        if (!line.empty())
            out.push_back(line.substr(0, line.find(',')));
    return out;
}

std::map<std::string, std::string> dir_contents(const fs::path &dir) {
    std::map<std::string, std::string> out;
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.is_regular_file())
            out[entry.path().filename().string()] = slurp(entry.path());
    return out;
}

} // namespace

TEST_CASE("empty config object yields the documented defaults") {
    const ExperimentConfig cfg = parse_experiment_config_text("{}");
    CHECK(cfg.geometry.radius_lambda == 15.0);
    CHECK(cfg.geometry.dx_lambda == 0.5);
    CHECK(cfg.geometry.grid_scale == 2.0);
    CHECK(cfg.geometry.half_cell_offset);
    CHECK(cfg.geometry.center_optimizable);
    CHECK(cfg.pattern.element_mode == ElementMode::separable);
    CHECK(cfg.pattern.cut_step_deg == 0.05);
    CHECK(cfg.pattern.floor_db == -120.0);
    CHECK(cfg.fitness.sll_req_db == -30.0);
    CHECK(cfg.fitness.mode == PenaltyMode::hinge);
    CHECK(cfg.bw_req_auto);
    CHECK(cfg.taper_alpha == 3.5);
    CHECK(cfg.pso.swarm_size == 30);
    CHECK(cfg.pso.max_iters == 1000);
    CHECK(cfg.pso.omega == 0.75);
    CHECK(cfg.pso.c1 == 2.5);
    CHECK(cfg.pso.c2 == 2.5);
    CHECK(cfg.pso.chi == 0.75);
    CHECK(cfg.pso.v_max == 4.0);
    CHECK(cfg.pso.fitness_threshold == 1e-12);
    CHECK(cfg.pso.binarization == Binarization::threshold);
    CHECK(cfg.pso.seed == 1);
    CHECK(cfg.sweep_radii == std::vector<double>{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
    CHECK(cfg.repeats == 3);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.emit_grid);
    CHECK(!cfg.emit_sweep_grids);
    CHECK(cfg.workers == 1);
}

TEST_CASE("config values override defaults field-wise") {
    const std::string text = R"({
        "geometry": {"radius_lambda": 6.5, "center_optimizable": false},
        "pattern": {"element_mode": "azimuth_symmetric", "cut_step_deg": 0.1},
        "fitness": {"sll_req_db": -26, "bw_req_deg": 4.25, "penalty_mode": "square"},
        "taper": {"alpha": 3.0},
        "pso": {"swarm_size": 12, "binarization": "sigmoid", "seed": 99},
        "sweep": {"radii_lambda": [5, 7.5]},
        "repeats": 5,
        "output_dir": "elsewhere",
        "emit_grid": false,
        "workers": 4
    })";
    const ExperimentConfig cfg = parse_experiment_config_text(text);
    CHECK(cfg.geometry.radius_lambda == 6.5);
    CHECK(!cfg.geometry.center_optimizable);
    CHECK(cfg.geometry.dx_lambda == 0.5); // untouched default
    CHECK(cfg.pattern.element_mode == ElementMode::azimuth_symmetric);
    CHECK(cfg.pattern.cut_step_deg == 0.1);
    CHECK(cfg.fitness.sll_req_db == -26.0);
    CHECK(cfg.fitness.bw_req_deg == 4.25);
    CHECK(!cfg.bw_req_auto); // explicit bw_req_deg pins the requirement
    CHECK(cfg.fitness.mode == PenaltyMode::square);
    CHECK(cfg.taper_alpha == 3.0);
    CHECK(cfg.pso.swarm_size == 12);
    CHECK(cfg.pso.binarization == Binarization::sigmoid);
    CHECK(cfg.pso.seed == 99);
    CHECK(cfg.sweep_radii == std::vector<double>{5.0, 7.5});
    CHECK(cfg.repeats == 5);
    CHECK(cfg.output_dir == "elsewhere");
    CHECK(!cfg.emit_grid);
    CHECK(cfg.workers == 4);
}

TEST_CASE("unknown keys are rejected with their full path") {
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"radius": 5})");
    }), "radius");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"geometry": {"radius": 5}})");
    }), "geometry.radius");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"pso": {"vmax": 2}})");
    }), "pso.vmax");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"fitness": {"sll": -20}})");
    }), "fitness.sll");
}

TEST_CASE("malformed values are rejected with a diagnostic") {
    check_message_contains(config_error_message([] {
        parse_experiment_config_text("[1,2]");
    }), "object");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text("{not json");
    }), "not valid JSON");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"pattern": {"element_mode": "isotropic"}})");
    }), "element_mode");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"fitness": {"penalty_mode": "cubic"}})");
    }), "penalty_mode");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"pso": {"binarization": "round"}})");
    }), "binarization");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"pso": {"swarm_size": -3}})");
    }), "pso.swarm_size");
    check_message_contains(config_error_message([] {
        parse_experiment_config_text(R"({"sweep": {"radii_lambda": []}})");
    }), "radii_lambda");
    CHECK_THROWS_AS(parse_experiment_config_text(R"({"repeats": 0})"), InvalidConfigError);
    CHECK_THROWS_AS(parse_experiment_config_text(R"({"sweep": {"radii_lambda": [-1]}})"),
                    InvalidConfigError);
    CHECK_THROWS_AS(parse_experiment_config_text(R"({"output_dir": ""})"), InvalidConfigError);
}

TEST_CASE("effective config echo reparses to the same configuration") {
    ExperimentConfig cfg = parse_experiment_config_text(
        R"({"geometry": {"radius_lambda": 5}, "pso": {"seed": 42}, "repeats": 2})");
    const json echo = experiment_config_json(cfg);
    CHECK(!echo.at("fitness").contains("bw_req_deg")); // auto mode omits it

    const ExperimentConfig back = parse_experiment_config(echo);
    CHECK(back.geometry.radius_lambda == cfg.geometry.radius_lambda);
    CHECK(back.pso.seed == cfg.pso.seed);
    CHECK(back.repeats == cfg.repeats);
    CHECK(back.bw_req_auto == cfg.bw_req_auto);
    CHECK(back.taper_alpha == cfg.taper_alpha);
    CHECK(back.sweep_radii == cfg.sweep_radii);
    CHECK(experiment_config_json(back) == echo);

    cfg.bw_req_auto = false;
    cfg.fitness.bw_req_deg = 3.5;
    const json pinned = experiment_config_json(cfg);
    CHECK(pinned.at("fitness").at("bw_req_deg") == 3.5);
    CHECK(!parse_experiment_config(pinned).bw_req_auto);
}

TEST_CASE("run_synth writes the layout bundle") {
    const fs::path dir = fresh_dir("synth");
    ExperimentConfig cfg;
    cfg.geometry.radius_lambda = 4.0;
    cfg.output_dir = dir.string();

    const json doc = run_synth(cfg);
    CHECK(doc.at("kind") == "synth");
    CHECK(doc.at("layout").at("n_total") == 41);
    CHECK(doc.at("layout").at("chromosome_len") == 6);
    CHECK(doc.at("artifacts").at("dir") == dir.string());
    for (const char *name : {"layout.csv", "run.json", "meta.json", "manifest.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);

    // The manifest covers exactly the payload files.
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    REQUIRE(manifest.at("files").size() == 2);
    CHECK(manifest.at("files")[0].at("name") == "layout.csv");
    CHECK(manifest.at("files")[1].at("name") == "run.json");
    fs::remove_all(dir);
}

TEST_CASE("run_taper writes the benchmark bundle") {
    const fs::path dir = fresh_dir("taper");
    ExperimentConfig cfg;
    cfg.geometry.radius_lambda = 4.0;
    cfg.pattern.cut_step_deg = 0.2;
    cfg.taper_alpha = 3.0;
    cfg.output_dir = dir.string();

    const json doc = run_taper(cfg);
    CHECK(doc.at("kind") == "taper");
    CHECK(doc.at("taper").at("alpha") == 3.0);
    CHECK(doc.at("taper").at("sll_db").get<double>() < -15.0);
    CHECK(doc.at("taper").at("hpbw_deg").get<double>() > 0.0);
    for (const char *name :
         {"layout.csv", "taper_weights.csv", "cut_taper.csv", "metrics.csv", "run.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);

    // The exported weights parse back to the layout size.
    const ParsedActivation act = parse_weights_csv(slurp(dir / "taper_weights.csv"));
    CHECK(act.weights.size() == 41);
    fs::remove_all(dir);
}

TEST_CASE("run_single writes a complete self-describing bundle") {
    const fs::path dir = fresh_dir("single");
    const ExperimentConfig cfg = small_config(dir.string());
    const json doc = run_single(cfg);

    CHECK(doc.at("kind") == "thin");
    REQUIRE(doc.at("runs").size() == 2);
    CHECK(doc.at("runs")[0].at("seed") == 7);
    CHECK(doc.at("runs")[1].at("seed") == 8);

    // Best run is the fitness argmin of the repeats.
    const double f0 = doc.at("runs")[0].at("fitness").get<double>();
    const double f1 = doc.at("runs")[1].at("fitness").get<double>();
    CHECK(doc.at("best").at("fitness").get<double>() == std::min(f0, f1));
    const double fill = doc.at("best").at("fill_ratio").get<double>();
    CHECK(fill > 0.0);
    CHECK(fill <= 1.0);
    CHECK(doc.at("bw_req_deg").get<double>() ==
          doc.at("taper").at("hpbw_deg").get<double>()); // auto-derived requirement

    for (const char *name :
         {"layout.csv", "taper_weights.csv", "activation.csv", "cut_taper.csv",
          "cut_thinned.csv", "cut_uniform.csv", "grid_thinned.csv", "metrics.csv",
          "trace.csv", "run.json", "meta.json", "manifest.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);

    // All three cuts share one angle grid (verbatim text comparison).
    const auto taper_axis = first_column(slurp(dir / "cut_taper.csv"));
    CHECK(taper_axis == first_column(slurp(dir / "cut_thinned.csv")));
    CHECK(taper_axis == first_column(slurp(dir / "cut_uniform.csv")));

    // metrics.csv: uniform + taper + one row per repeat.
    CHECK(first_column(slurp(dir / "metrics.csv")) ==
          std::vector<std::string>{"uniform", "taper", "thinned", "thinned"});

    // trace.csv rows = trace entries of the best run.
    const std::size_t best_seed = doc.at("best").at("seed").get<std::size_t>();
    const auto &best_row = doc.at("runs")[best_seed - 7];
    CHECK(first_column(slurp(dir / "trace.csv")).size() ==
          best_row.at("iterations").get<std::size_t>() + 1);

    // The activation file holds only 0/1 weights matching active_count.
    const ParsedActivation act = parse_weights_csv(slurp(dir / "activation.csv"));
    std::size_t ones = 0;
    for (double w : act.weights) {
        CHECK((w == 0.0 || w == 1.0));
        ones += w == 1.0;
    }
    CHECK(ones == doc.at("best").at("active_count").get<std::size_t>());
    fs::remove_all(dir);
}

TEST_CASE("run_single repeats are byte-identical apart from the timestamp") {
    const fs::path base = fresh_dir("repro");
    const ExperimentConfig cfg = small_config(base.string());
    const json doc1 = run_single(cfg);
    const json doc2 = run_single(cfg); // same config: lands in base/v2
    const fs::path d1(doc1.at("artifacts").at("dir").get<std::string>());
    const fs::path d2(doc2.at("artifacts").at("dir").get<std::string>());
    CHECK(d1 == base);
    CHECK(d2 == base / "v2");

    auto c1 = dir_contents(d1);
    auto c2 = dir_contents(d2);
    REQUIRE(c1.size() == c2.size());
    for (auto &[name, bytes] : c1) {
        REQUIRE(c2.count(name) == 1);
        if (name == "meta.json")
            continue; // wall-clock timestamp, excluded from the manifest too
        CHECK_MESSAGE(bytes == c2[name], name, " differs between identical runs");
    }
    fs::remove_all(base);
}

TEST_CASE("worker count does not change the results") {
    const fs::path d1 = fresh_dir("workers1");
    const fs::path d4 = fresh_dir("workers4");
    ExperimentConfig cfg = small_config(d1.string());
    run_single(cfg);
    cfg.output_dir = d4.string();
    cfg.workers = 4;
    run_single(cfg);

    for (const char *name : {"activation.csv", "metrics.csv", "trace.csv", "cut_thinned.csv"})
        CHECK_MESSAGE(slurp(d1 / name) == slurp(d4 / name), name,
                      " differs between worker counts");
    fs::remove_all(d1);
    fs::remove_all(d4);
}

TEST_CASE("run_sweep records a degenerate radius and keeps going") {
    const fs::path dir = fresh_dir("sweep");
    ExperimentConfig cfg = small_config(dir.string());
    cfg.repeats = 1;
    cfg.pso.max_iters = 20;
    cfg.sweep_radii = {1.0, 4.0}; // 1.0 wavelength aperture has no lattice nodes

    const json doc = run_sweep(cfg);
    CHECK(doc.at("kind") == "sweep");
    REQUIRE(doc.at("rows").size() == 2);
    REQUIRE(doc.at("failed_radii").size() == 1);
    CHECK(doc.at("failed_radii")[0].at("radius_lambda") == 1.0);
    check_message_contains(doc.at("rows")[0].at("status").get<std::string>(),
                           "degenerate_aperture");
    CHECK(doc.at("rows")[1].at("status") == "ok");
    CHECK(doc.at("rows")[1].at("n_total") == 41);
    CHECK(doc.at("rows")[1].at("dir") == "R4");

    for (const char *name : {"summary.csv", "summary.json", "plot.py", "manifest.json"})
        CHECK_MESSAGE(fs::exists(dir / name), name);
    CHECK(fs::exists(dir / "R4" / "activation.csv"));
    CHECK(!fs::exists(dir / "R4" / "grid_thinned.csv")); // sweep grids off by default

    // summary.csv carries the failed row with status=failed, dir column last.
    const std::string summary = slurp(dir / "summary.csv");
    std::istringstream lines(summary);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "radius_lambda,n_total,chromosome_len,active_count,sll_db,hpbw_deg,"
                    "fitness,seed,taper_sll_db,taper_hpbw_deg,bw_req_deg,status,dir");
    check_message_contains(row1, "failed,R1");
    check_message_contains(row2, "ok,R4");
    fs::remove_all(dir);
}

TEST_CASE("run_pattern re-evaluates a stored activation byte-compatibly") {
    const fs::path rdir = fresh_dir("pat_run");
    const ExperimentConfig rcfg = small_config(rdir.string());
    const json rdoc = run_single(rcfg);

    const fs::path pdir = fresh_dir("pat_eval");
    ExperimentConfig pcfg = rcfg;
    pcfg.output_dir = pdir.string();
    pcfg.emit_grid = false;
    const json pdoc = run_pattern(pcfg, (rdir / "activation.csv").string());

    CHECK(pdoc.at("kind") == "pattern");
    CHECK(pdoc.at("n_elements") == 41);
    // Same positions, same weights, same evaluation order: metrics match the
    // thinning run's best row exactly.
    CHECK(pdoc.at("metrics").at("sll_db").get<double>() ==
          doctest::Approx(rdoc.at("best").at("sll_db").get<double>()).epsilon(1e-12));
    CHECK(pdoc.at("metrics").at("hpbw_deg").get<double>() ==
          doctest::Approx(rdoc.at("best").at("hpbw_deg").get<double>()).epsilon(1e-12));
    CHECK(fs::exists(pdir / "cut.csv"));
    CHECK(!fs::exists(pdir / "grid.csv"));

    // The re-evaluated cut is byte-identical to the run's exported cut.
    CHECK(slurp(pdir / "cut.csv") == slurp(rdir / "cut_thinned.csv"));

    CHECK_THROWS_AS(run_pattern(pcfg, (rdir / "no_such_file.csv").string()), IoError);
    fs::remove_all(rdir);
    fs::remove_all(pdir);
}
