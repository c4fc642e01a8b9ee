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

#include "octarray/pso.hpp"
#include "octarray/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace octarray {

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value; decorrelates adjacent
    // (master, stream) pairs far beyond what mt19937_64 seeding needs.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void FitnessSpec::validate() const {
    if (!std::isfinite(sll_req_db) || sll_req_db >= 0.0)
        throw InvalidConfigError("fitness.sll_req_db must be a negative dB value");
    if (!std::isfinite(bw_req_deg) || bw_req_deg < 0.0)
        throw InvalidConfigError("fitness.bw_req_deg must be non-negative");
    if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2))
        throw InvalidConfigError("fitness weights must be finite and non-negative");
}

void PsoConfig::validate() const {
    if (swarm_size == 0)
        throw InvalidConfigError("pso.swarm_size must be positive");
    if (max_iters == 0)
        throw InvalidConfigError("pso.max_iters must be positive");
    if (!(v_max > 0.0) || !std::isfinite(v_max))
        throw InvalidConfigError("pso.v_max must be positive");
    if (!(chi > 0.0) || !std::isfinite(chi))
        throw InvalidConfigError("pso.chi must be positive");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw InvalidConfigError("pso.omega must be non-negative");
    if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw InvalidConfigError("pso.c1/c2 must be non-negative");
    if (!std::isfinite(fitness_threshold))
        throw InvalidConfigError("pso.fitness_threshold must be finite");
}

namespace {

double penalty(double violation, PenaltyMode mode) {
    if (mode == PenaltyMode::hinge)
        violation = std::max(0.0, violation);
    return violation * violation;
}

} // namespace

FitnessValue evaluate_fitness(const CutEvaluator &evaluator, const FitnessSpec &spec,
                              const std::vector<std::uint8_t> &chromosome) {
    FitnessValue out{std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(), false};
    try {
        const auto &db = evaluator.evaluate(chromosome);
        const CutMetrics m = extract_metrics(evaluator.theta_deg(), db, evaluator.floor_db());
        out.sll_db = m.sll_db;
        out.hpbw_deg = m.hpbw_deg;
        out.fitness = spec.w1 * penalty(m.sll_db - spec.sll_req_db, spec.mode) +
                      spec.w2 * penalty(m.hpbw_deg - spec.bw_req_deg, spec.mode);
        out.valid = true;
    } catch (const Error &) {
        // Degenerate cut (all-zero, no sidelobes, beam too wide): the
        // candidate is infeasible and scores +infinity.
    }
    return out;
}

void update_velocity(std::vector<double> &v, const std::vector<double> &x,
                     const std::vector<std::uint8_t> &pbest,
                     const std::vector<std::uint8_t> &gbest, const PsoConfig &cfg, Rng &rng) {
    for (std::size_t d = 0; d < v.size(); ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        const double vn = cfg.omega * v[d] +
                          cfg.c1 * r1 * (static_cast<double>(pbest[d]) - x[d]) +
                          cfg.c2 * r2 * (static_cast<double>(gbest[d]) - x[d]);
        v[d] = std::clamp(vn, -cfg.v_max, cfg.v_max);
    }
}

void update_position(std::vector<double> &x, const std::vector<double> &v,
                     std::vector<std::uint8_t> &bits, const PsoConfig &cfg, Rng &rng) {
    for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] = std::clamp(x[d] + cfg.chi * v[d], 0.0, 1.0);
        if (cfg.binarization == Binarization::threshold) {
            bits[d] = x[d] > 0.5 ? 1 : 0;
        } else {
            const double p = 1.0 / (1.0 + std::exp(-v[d]));
            bits[d] = rng.uniform() < p ? 1 : 0;
        }
    }
}

PsoResult run_pso(const ArrayLayout &layout, const CutEvaluator &evaluator,
                  const FitnessSpec &spec, const PsoConfig &cfg) {
    spec.validate();
    cfg.validate();
    const std::size_t dim = layout.chromosome_len;
    if (dim == 0)
        throw DegenerateApertureError("layout has an empty chromosome");

    struct Particle {
        std::vector<double> x, v;
        std::vector<std::uint8_t> bits, pbest;
        double pbest_fitness = std::numeric_limits<double>::infinity();
        Rng rng{0};
    };

    // Per-particle streams: all randomness of particle p comes from one
    // generator seeded by (master seed, p), so results are independent of
    // evaluation order.
    std::vector<Particle> swarm(cfg.swarm_size);
    for (std::size_t p = 0; p < cfg.swarm_size; ++p) {
        auto &pt = swarm[p];
        pt.rng = Rng(derive_stream_seed(cfg.seed, p));
        pt.x.resize(dim);
        pt.v.resize(dim);
        pt.bits.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            pt.bits[d] = pt.rng.bernoulli(0.5) ? 1 : 0;
            pt.v[d] = pt.rng.uniform(-cfg.v_max, cfg.v_max);
        }
        pt.bits[dim - 1] = 1; // central element starts active
        for (std::size_t d = 0; d < dim; ++d)
            pt.x[d] = static_cast<double>(pt.bits[d]);
        pt.pbest = pt.bits;
    }

    PsoResult res;
    res.seed = cfg.seed;
    res.best_fitness = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> gbest(dim, 1);

    auto score = [&](Particle &pt) {
        const FitnessValue f = evaluate_fitness(evaluator, spec, pt.bits);
        if (f.fitness < pt.pbest_fitness) {
            pt.pbest_fitness = f.fitness;
            pt.pbest = pt.bits;
        }
        return f;
    };

    auto refresh_gbest = [&]() {
        for (auto &pt : swarm) {
            if (pt.pbest_fitness < res.best_fitness) {
                res.best_fitness = pt.pbest_fitness;
                gbest = pt.pbest;
            }
        }
    };

    // Iteration-0 bookkeeping: score the initial binary positions so both
    // pbest and gbest are defined before the first update.
    for (auto &pt : swarm)
        score(pt);
    refresh_gbest();
    res.fitness_trace.push_back(res.best_fitness);

    while (res.iterations < cfg.max_iters && !(res.best_fitness < cfg.fitness_threshold)) {
        for (auto &pt : swarm) {
            update_velocity(pt.v, pt.x, pt.pbest, gbest, cfg, pt.rng);
            update_position(pt.x, pt.v, pt.bits, cfg, pt.rng);
            score(pt);
        }
        refresh_gbest();
        ++res.iterations;
        res.fitness_trace.push_back(res.best_fitness);
    }
    res.converged = res.best_fitness < cfg.fitness_threshold;

    res.best_chromosome = gbest;
    const FitnessValue best = evaluate_fitness(evaluator, spec, gbest);
    res.sll_db = best.sll_db;
    res.hpbw_deg = best.hpbw_deg;
    const auto weights = layout.expand_chromosome(gbest);
    res.active_count = static_cast<std::size_t>(
        std::count_if(weights.begin(), weights.end(), [](double w) { return w != 0.0; }));
    return res;
}

} // namespace octarray
