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

#ifndef OCTARRAY_EXPERIMENT_HPP
#define OCTARRAY_EXPERIMENT_HPP

#include "octarray/geometry.hpp"
#include "octarray/pattern.hpp"
#include "octarray/pso.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace octarray {

/// Complete experiment description. Every field has a default, so an empty
/// JSON object is a valid config; JSON values override field-wise and unknown
/// keys are rejected (they are almost always typos).
struct ExperimentConfig {
    GeometryConfig geometry;
    PatternConfig pattern;
    FitnessSpec fitness;
    PsoConfig pso;                 ///< pso.seed is the master seed

    /// When true (default) bw_req_deg is derived per layout as the HPBW of
    /// the alpha-tapered benchmark aperture; an explicit "bw_req_deg" in the
    /// config pins it instead.
    bool bw_req_auto = true;
    double taper_alpha = 3.5;

    std::vector<double> sweep_radii = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    std::size_t repeats = 3;       ///< optimization runs per configuration
    std::string output_dir = "out";
    bool emit_grid = true;         ///< 2-D grid export for single runs
    bool emit_sweep_grids = false; ///< grids for every sweep run (large)
    std::size_t workers = 1;       ///< worker threads across runs

    void validate() const;
};

/// Parses and validates a config JSON document (already-parsed form).
ExperimentConfig parse_experiment_config(const nlohmann::json &j);

/// Same, from raw text (error messages include JSON parse context).
ExperimentConfig parse_experiment_config_text(const std::string &text);

/// Round-trips the effective config (all defaults applied) back to JSON;
/// embedded in run artifacts so a run is reproducible from its output alone.
nlohmann::json experiment_config_json(const ExperimentConfig &cfg);

/// Builds the layout and writes layout.csv plus a summary document.
/// Returns the summary: counts, chromosome length, artifact paths.
nlohmann::json run_synth(const ExperimentConfig &cfg);

/// Taper benchmark: radial Kaiser-profile weights on the full aperture,
/// principal cut, SLL/HPBW. Writes weights, cut, metrics.
nlohmann::json run_taper(const ExperimentConfig &cfg);

/// Thinning experiment at cfg.geometry.radius_lambda: `repeats` independent
/// PSO runs (run i seeded pso.seed + i), benchmarked against the taper.
/// Writes layout, best-run activation, thinned and tapered cuts on identical
/// angle grids, optional 2-D grid, metrics table, fitness trace, manifest.
nlohmann::json run_single(const ExperimentConfig &cfg);

/// Radius sweep over cfg.sweep_radii: per-radius thinning runs plus taper
/// benchmark, summary table (CSV + JSON) and a self-contained matplotlib
/// script for the standard figures. A failing radius is recorded in the
/// summary and does not abort the sweep.
nlohmann::json run_sweep(const ExperimentConfig &cfg);

/// Re-evaluates cuts/grids/metrics for a stored activation file (weights CSV
/// with positions). Metric extraction failures are reported per-metric
/// rather than failing the whole evaluation.
nlohmann::json run_pattern(const ExperimentConfig &cfg, const std::string &activation_csv_path);

} // namespace octarray

#endif // OCTARRAY_EXPERIMENT_HPP
