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

#ifndef OCTARRAY_TAPER_HPP
#define OCTARRAY_TAPER_HPP

#include "octarray/geometry.hpp"

#include <vector>

namespace octarray {

/// Modified Bessel function of the first kind, order zero, by its power
/// series. Converges for all finite x; accurate to ~1e-15 relative in the
/// taper's operating range.
double bessel_i0(double x);

/// Kaiser-style amplitude taper over n points indexed 0..n-1:
///   T(idx) = I0(alpha * sqrt(1 - x^2)) / I0(alpha),  x = 2*(idx - n/2)/n.
/// Peak 1 at the array center, I0(alpha*sqrt(1-1)) / I0(alpha) = 1/I0(alpha)
/// at the edge. Throws InvalidConfigError for n == 0 or alpha < 0.
std::vector<double> taper_weights_1d(std::size_t n, double alpha);

/// Radial application of the same profile to a circular aperture:
/// x = r_e / R per element (clamped to 1 for rim elements within rounding).
/// Weight order matches layout element order.
std::vector<double> radial_taper(const ArrayLayout &layout, double alpha);

} // namespace octarray

#endif // OCTARRAY_TAPER_HPP
