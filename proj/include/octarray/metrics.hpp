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

#ifndef OCTARRAY_METRICS_HPP
#define OCTARRAY_METRICS_HPP

#include <cstddef>
#include <vector>

namespace octarray {

/// Scalar figures of merit extracted from one principal-plane cut.
struct CutMetrics {
    double sll_db;    ///< worst sidelobe relative to the peak (negative)
    double hpbw_deg;  ///< half-power (-3 dB) beamwidth of the main lobe
    double peak_db;   ///< absolute peak level of the cut
    std::size_t peak_index;
};

/// Highest sample outside the null-to-null main lobe, in dB relative to the
/// peak. The main lobe is delimited by walking from the peak to the first
/// strict local minimum on each side; across a flat plateau the walk continues
/// to the far end. Throws NoSidelobesError when a side never turns back up
/// (no sidelobe region exists) and AllZeroPatternError when the cut is
/// entirely at the floor.
double extract_sll(const std::vector<double> &theta_deg, const std::vector<double> &mag_db,
                   double floor_db = -120.0);

/// Width between the -3.0103 dB (half-power) crossings around the peak,
/// linearly interpolated between samples. Throws BeamTooWideError when a
/// crossing is not found inside the cut.
double extract_hpbw(const std::vector<double> &theta_deg, const std::vector<double> &mag_db,
                    double floor_db = -120.0);

/// Both metrics in one pass over the same cut.
CutMetrics extract_metrics(const std::vector<double> &theta_deg,
                           const std::vector<double> &mag_db, double floor_db = -120.0);

} // namespace octarray

#endif // OCTARRAY_METRICS_HPP
