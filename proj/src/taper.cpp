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

#include "octarray/taper.hpp"
#include "octarray/error.hpp"

#include <cmath>
#include <string>

namespace octarray {

double bessel_i0(double x) {
    // Power series I0(x) = sum_k ((x/2)^k / k!)^2. Terms are computed by the
    // recurrence t_{k} = t_{k-1} * (x/2)^2 / k^2, summed until they stop
    // contributing at double precision.
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return sum;
}

namespace {

double taper_profile(double x, double alpha, double inv_i0_alpha) {
    const double arg = 1.0 - x * x;
    const double s = arg > 0.0 ? std::sqrt(arg) : 0.0;
    return bessel_i0(alpha * s) * inv_i0_alpha;
}

} // namespace

std::vector<double> taper_weights_1d(std::size_t n, double alpha) {
    if (n == 0)
        throw InvalidConfigError("taper length must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidConfigError("taper alpha must be finite and non-negative, got " +
                                 std::to_string(alpha));
    const double inv_i0 = 1.0 / bessel_i0(alpha);
    const double half = static_cast<double>(n) / 2.0;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) - half) / half;
        w[i] = taper_profile(x, alpha, inv_i0);
    }
    return w;
}

std::vector<double> radial_taper(const ArrayLayout &layout, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidConfigError("taper alpha must be finite and non-negative");
    const double radius = layout.config.radius_lambda;
    if (!(radius > 0.0))
        throw DegenerateApertureError("layout has no positive radius for radial taper");
    const double inv_i0 = 1.0 / bessel_i0(alpha);
    std::vector<double> w(layout.n_total());
    for (std::size_t e = 0; e < layout.n_total(); ++e) {
        const auto &el = layout.elements[e];
        const double r = std::hypot(el.x_lambda, el.y_lambda);
        // Rim elements can sit a rounding hair outside R; clamp to the edge.
        const double x = std::min(r / radius, 1.0);
        w[e] = taper_profile(x, alpha, inv_i0);
    }
    return w;
}

} // namespace octarray
