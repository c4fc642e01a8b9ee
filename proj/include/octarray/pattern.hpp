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

#ifndef OCTARRAY_PATTERN_HPP
#define OCTARRAY_PATTERN_HPP

#include "octarray/geometry.hpp"

#include <complex>
#include <vector>

namespace octarray {

/// Element (unit-cell) power-pattern model.
enum class ElementMode {
    separable,        ///< cos^2(theta) * cos^2(phi), the reference model
    azimuth_symmetric ///< cos^2(theta), rotationally symmetric alternative
};

struct PatternConfig {
    ElementMode element_mode = ElementMode::separable;
    double cut_step_deg = 0.05;  ///< angular resolution of principal cuts
    double grid_step_deg = 0.5;  ///< angular resolution of 2-D grids
    double floor_db = -120.0;    ///< clamp for log conversion of nulls
    double cut_phi_deg = 0.0;    ///< azimuth of the principal cut

    void validate() const; ///< throws InvalidConfigError on bad values
};

/// Element-pattern magnitude multiplier applied to |AF| before the
/// 20*log10 conversion: cos^2(theta)*cos^2(phi) for the separable model,
/// cos^2(theta) for the azimuth-symmetric one. Angles in radians; the two
/// modes coincide on the principal phi = 0 cut.
double element_gain(double theta_rad, double phi_rad, ElementMode mode);

/// Complex array factor of an arbitrary weighted aperture:
///   AF = sum_e w_e * exp(j*2*pi*(x_e*u + y_e*v)),  u = sin(t)cos(p),
///   v = sin(t)sin(p), positions in wavelengths. Plain element-order
/// accumulation; at boresight the result equals the weight sum exactly.
std::complex<double> array_factor(const std::vector<double> &x_lambda,
                                  const std::vector<double> &y_lambda,
                                  const std::vector<double> &weights,
                                  double theta_rad, double phi_rad);

/// |element pattern * array factor| in dB (20*log10, floored). The maximum
/// over the evaluation domain is not normalized out; metric extraction
/// normalizes against the peak itself.
double total_pattern_db(const ArrayLayout &layout, const std::vector<double> &weights,
                        double theta_rad, double phi_rad, const PatternConfig &pat);

/// One principal-plane cut: magnitude in dB over theta at fixed phi.
struct PatternCut {
    std::vector<double> theta_deg;
    std::vector<double> mag_db;
    double phi_deg = 0.0;
};

/// Full 2-D sampling of the pattern (theta x phi mesh, row-major in theta).
struct PatternGrid {
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;
    std::vector<double> mag_db; ///< size theta_deg.size() * phi_deg.size()
};

/// Evaluates the theta in [-90, 90] cut at pat.cut_phi_deg for explicit
/// per-element weights. Throws AllZeroPatternError when every weight is zero.
PatternCut compute_cut(const ArrayLayout &layout, const std::vector<double> &weights,
                       const PatternConfig &pat);

/// Evaluates the full theta in [-90, 90] x phi in [0, 360) grid.
PatternGrid compute_grid(const ArrayLayout &layout, const std::vector<double> &weights,
                         const PatternConfig &pat);

/// Precomputed slot-basis evaluator for one layout and one cut geometry.
///
/// Elements sharing a chromosome slot contribute a fixed complex phasor sum
/// per angle, so the cut of any chromosome is a D-term accumulation instead
/// of an n_total-term one (D = chromosome_len, an 8x reduction). This is the
/// hot path of the optimizer; results are identical to compute_cut on the
/// expanded weights up to floating-point reassociation.
class CutEvaluator {
  public:
    CutEvaluator(const ArrayLayout &layout, const PatternConfig &pat);

    /// Cut magnitudes in dB for a binary chromosome (length chromosome_len).
    /// Thread-safe on a shared const evaluator; the returned reference points
    /// into thread-local storage and stays valid until this thread's next
    /// call.
    const std::vector<double> &evaluate(const std::vector<std::uint8_t> &chromosome) const;

    const std::vector<double> &theta_deg() const { return theta_deg_; }
    double floor_db() const { return floor_db_; }

  private:
    std::size_t n_angles_ = 0;
    std::size_t n_slots_ = 0;
    std::vector<std::complex<double>> basis_; ///< angle-major [angle][slot]
    std::vector<double> gain_;                ///< element gain per angle
    std::vector<double> theta_deg_;
    double floor_db_ = -120.0;
    bool center_locked_ = false;
};

} // namespace octarray

#endif // OCTARRAY_PATTERN_HPP
