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

#ifndef OCTARRAY_PSO_HPP
#define OCTARRAY_PSO_HPP

#include "octarray/metrics.hpp"
#include "octarray/pattern.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace octarray {

/// Deterministic uniform source: mt19937_64 (portable output sequence) with
/// an explicit 53-bit double mapping, so results are bit-identical across
/// standard libraries. Do not substitute std::uniform_real_distribution here;
/// its output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

/// splitmix64-style mix of (master seed, stream index) into an independent
/// stream seed. Each particle owns one stream, so results do not depend on
/// evaluation order or worker count.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

/// How a requirement violation enters the fitness.
enum class PenaltyMode {
    hinge, ///< max(0, metric - requirement)^2; only violations cost
    square ///< (metric - requirement)^2; symmetric distance to the target
};

/// Fitness F = w1 * pen(SLL - SLL_req) + w2 * pen(HPBW - BW_req), evaluated
/// on the principal cut of the expanded chromosome. Lower is better; a cut
/// whose metrics cannot be extracted scores +infinity.
struct FitnessSpec {
    double sll_req_db = -30.0;
    double bw_req_deg = 0.0;
    double w1 = 1.0;
    double w2 = 1.0;
    PenaltyMode mode = PenaltyMode::hinge;

    void validate() const;
};

struct FitnessValue {
    double fitness;   ///< +infinity when the cut has no extractable metrics
    double sll_db;    ///< NaN when invalid
    double hpbw_deg;  ///< NaN when invalid
    bool valid;
};

FitnessValue evaluate_fitness(const CutEvaluator &evaluator, const FitnessSpec &spec,
                              const std::vector<std::uint8_t> &chromosome);

/// Position-to-bit rule.
enum class Binarization {
    threshold, ///< bit = (clamped position > 0.5); deterministic
    sigmoid    ///< bit = (rand < 1/(1+exp(-v))); classical stochastic rule
};

struct PsoConfig {
    std::size_t swarm_size = 30;
    std::size_t max_iters = 1000;
    double omega = 0.75;          ///< inertia
    double c1 = 2.5;              ///< cognitive acceleration
    double c2 = 2.5;              ///< social acceleration
    double chi = 0.75;            ///< position-update step scale
    double v_max = 4.0;           ///< velocity clamp (symmetric)
    double fitness_threshold = 1e-12; ///< stop once global best drops below
    Binarization binarization = Binarization::threshold;
    std::uint64_t seed = 1;       ///< master seed of this run

    void validate() const;
};

/// In-place velocity update for one particle:
///   v <- omega*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), clamped to
/// [-v_max, v_max], with fresh r1, r2 drawn per component. x is the
/// continuous position; pbest/gbest are the tracked binary positions.
void update_velocity(std::vector<double> &v, const std::vector<double> &x,
                     const std::vector<std::uint8_t> &pbest,
                     const std::vector<std::uint8_t> &gbest, const PsoConfig &cfg, Rng &rng);

/// In-place position update and binarization: x <- clamp01(x + chi*v), then
/// bits by the configured rule (threshold on x, or sigmoid on v — the latter
/// saturates to probability 1 as v grows to +infinity).
void update_position(std::vector<double> &x, const std::vector<double> &v,
                     std::vector<std::uint8_t> &bits, const PsoConfig &cfg, Rng &rng);

/// Outcome of one optimization run.
struct PsoResult {
    std::vector<std::uint8_t> best_chromosome;
    double best_fitness = 0.0;
    double sll_db = 0.0;
    double hpbw_deg = 0.0;
    std::size_t active_count = 0;     ///< ones in the expanded weight vector
    std::size_t iterations = 0;       ///< update iterations executed
    bool converged = false;           ///< stopped by fitness_threshold
    std::uint64_t seed = 0;
    std::vector<double> fitness_trace; ///< global best per iteration, entry 0
                                       ///< is the post-initialization best
};

/// Runs binary PSO over chromosomes of the evaluator's layout. Deterministic
/// for a fixed (layout, pattern grid, spec, cfg): every random draw comes
/// from per-particle streams derived from cfg.seed. Initialization draws each
/// bit Bernoulli(1/2) except the central slot, which starts active; initial
/// velocities are uniform in [-v_max, v_max].
PsoResult run_pso(const ArrayLayout &layout, const CutEvaluator &evaluator,
                  const FitnessSpec &spec, const PsoConfig &cfg);

} // namespace octarray

#endif // OCTARRAY_PSO_HPP
