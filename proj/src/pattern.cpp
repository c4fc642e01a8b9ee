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

#include "octarray/pattern.hpp"
#include "octarray/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace octarray {

namespace {

constexpr double deg2rad = std::numbers::pi / 180.0;
constexpr double two_pi = 2.0 * std::numbers::pi;

double clamp_db(double linear_mag, double floor_db) {
    if (!(linear_mag > 0.0))
        return floor_db;
    return std::max(20.0 * std::log10(linear_mag), floor_db);
}

std::vector<double> make_axis(double lo, double hi, double step) {
    std::vector<double> axis;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    axis.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        axis.push_back(lo + static_cast<double>(k) * step);
    return axis;
}

} // namespace

void PatternConfig::validate() const {
    if (!(cut_step_deg > 0.0) || cut_step_deg > 30.0)
        throw InvalidConfigError("pattern.cut_step_deg must be in (0, 30]");
    if (!(grid_step_deg > 0.0) || grid_step_deg > 30.0)
        throw InvalidConfigError("pattern.grid_step_deg must be in (0, 30]");
    if (!(floor_db < 0.0))
        throw InvalidConfigError("pattern.floor_db must be negative");
    if (!std::isfinite(cut_phi_deg))
        throw InvalidConfigError("pattern.cut_phi_deg must be finite");
}

double element_gain(double theta_rad, double phi_rad, ElementMode mode) {
    const double ct = std::cos(theta_rad);
    if (mode == ElementMode::azimuth_symmetric)
        return ct * ct;
    const double cp = std::cos(phi_rad);
    return ct * ct * cp * cp;
}

std::complex<double> array_factor(const std::vector<double> &x_lambda,
                                  const std::vector<double> &y_lambda,
                                  const std::vector<double> &weights, double theta_rad,
                                  double phi_rad) {
    if (x_lambda.size() != y_lambda.size() || x_lambda.size() != weights.size())
        throw InvalidConfigError("array_factor: positions and weights differ in length");

    const double u = std::sin(theta_rad) * std::cos(phi_rad);
    const double v = std::sin(theta_rad) * std::sin(phi_rad);

    // Plain element-order accumulation. At boresight u = v = 0, every phase
    // term is exactly exp(0) = 1 and the sum equals the weight sum exactly.
    std::complex<double> af{0.0, 0.0};
    for (std::size_t e = 0; e < weights.size(); ++e) {
        const double phase = two_pi * (x_lambda[e] * u + y_lambda[e] * v);
        af += weights[e] * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return af;
}

double total_pattern_db(const ArrayLayout &layout, const std::vector<double> &weights,
                        double theta_rad, double phi_rad, const PatternConfig &pat) {
    if (weights.size() != layout.n_total())
        throw InvalidConfigError("weights length does not match layout");
    std::complex<double> af{0.0, 0.0};
    const double u = std::sin(theta_rad) * std::cos(phi_rad);
    const double v = std::sin(theta_rad) * std::sin(phi_rad);
    for (std::size_t e = 0; e < layout.elements.size(); ++e) {
        if (weights[e] == 0.0)
            continue;
        const Element &el = layout.elements[e];
        const double phase = two_pi * (el.x_lambda * u + el.y_lambda * v);
        af += weights[e] * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return clamp_db(element_gain(theta_rad, phi_rad, pat.element_mode) * std::abs(af),
                    pat.floor_db);
}

PatternCut compute_cut(const ArrayLayout &layout, const std::vector<double> &weights,
                       const PatternConfig &pat) {
    pat.validate();
    if (weights.size() != layout.n_total())
        throw InvalidConfigError("weights length " + std::to_string(weights.size()) +
                                 " does not match layout n_total " +
                                 std::to_string(layout.n_total()));
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; }))
        throw AllZeroPatternError("all element weights are zero; pattern is identically zero");

    PatternCut cut;
    cut.phi_deg = pat.cut_phi_deg;
    cut.theta_deg = make_axis(-90.0, 90.0, pat.cut_step_deg);
    cut.mag_db.resize(cut.theta_deg.size());
    const double phi = pat.cut_phi_deg * deg2rad;
    for (std::size_t a = 0; a < cut.theta_deg.size(); ++a)
        cut.mag_db[a] = total_pattern_db(layout, weights, cut.theta_deg[a] * deg2rad, phi, pat);
    return cut;
}

PatternGrid compute_grid(const ArrayLayout &layout, const std::vector<double> &weights,
                         const PatternConfig &pat) {
    pat.validate();
    if (weights.size() != layout.n_total())
        throw InvalidConfigError("weights length does not match layout n_total");
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; }))
        throw AllZeroPatternError("all element weights are zero; pattern is identically zero");

    PatternGrid grid;
    grid.theta_deg = make_axis(-90.0, 90.0, pat.grid_step_deg);
    grid.phi_deg = make_axis(0.0, 360.0 - pat.grid_step_deg, pat.grid_step_deg);
    grid.mag_db.resize(grid.theta_deg.size() * grid.phi_deg.size());
    for (std::size_t t = 0; t < grid.theta_deg.size(); ++t) {
        const double theta = grid.theta_deg[t] * deg2rad;
        for (std::size_t p = 0; p < grid.phi_deg.size(); ++p)
            grid.mag_db[t * grid.phi_deg.size() + p] =
                total_pattern_db(layout, weights, theta, grid.phi_deg[p] * deg2rad, pat);
    }
    return grid;
}

CutEvaluator::CutEvaluator(const ArrayLayout &layout, const PatternConfig &pat) {
    pat.validate();
    theta_deg_ = make_axis(-90.0, 90.0, pat.cut_step_deg);
    n_angles_ = theta_deg_.size();
    n_slots_ = layout.chromosome_len;
    floor_db_ = pat.floor_db;
    center_locked_ = !layout.config.center_optimizable && layout.sector_size > 0;

    basis_.assign(n_angles_ * n_slots_, std::complex<double>{0.0, 0.0});
    gain_.resize(n_angles_);

    const double phi = pat.cut_phi_deg * deg2rad;
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    for (std::size_t a = 0; a < n_angles_; ++a) {
        const double theta = theta_deg_[a] * deg2rad;
        const double st = std::sin(theta);
        const double u = st * cp;
        const double v = st * sp;
        gain_[a] = element_gain(theta, phi, pat.element_mode);
        auto *row = &basis_[a * n_slots_];
        for (const auto &el : layout.elements) {
            const double phase = two_pi * (el.x_lambda * u + el.y_lambda * v);
            row[static_cast<std::size_t>(el.slot)] +=
                std::complex<double>{std::cos(phase), std::sin(phase)};
        }
    }
}

const std::vector<double> &CutEvaluator::evaluate(
    const std::vector<std::uint8_t> &chromosome) const {
    if (chromosome.size() != n_slots_)
        throw InvalidConfigError("chromosome length does not match evaluator layout");

    // Gather active slots once; each angle is then a short complex sum over
    // the slot basis instead of the full element set. Buffers are
    // thread-local so a shared evaluator is safe under concurrent callers;
    // the returned reference stays valid until this thread's next call.
    thread_local std::vector<std::size_t> active;
    thread_local std::vector<double> out;
    active.clear();
    for (std::size_t s = 0; s < n_slots_; ++s)
        if (chromosome[s] || (center_locked_ && s + 1 == n_slots_))
            active.push_back(s);
    if (active.empty())
        throw AllZeroPatternError("all-zero chromosome; pattern is identically zero");

    out.resize(n_angles_);
    for (std::size_t a = 0; a < n_angles_; ++a) {
        const auto *row = &basis_[a * n_slots_];
        double re = 0.0, im = 0.0;
        for (const std::size_t s : active) {
            re += row[s].real();
            im += row[s].imag();
        }
        out[a] = clamp_db(gain_[a] * std::hypot(re, im), floor_db_);
    }
    return out;
}

} // namespace octarray
