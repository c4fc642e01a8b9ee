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

#include "octarray/geometry.hpp"
#include "octarray/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace octarray {

namespace {

// Tolerance factor for the disc boundary test: points whose radius equals R
// up to rounding belong to the aperture.
constexpr double disc_slack = 1.0 + 1e-9;

} // namespace

const char *status_name(Status s) noexcept {
    switch (s) {
    case Status::ok:
        return "ok";
    case Status::invalid_config:
        return "invalid_config";
    case Status::degenerate_aperture:
        return "degenerate_aperture";
    case Status::all_zero_pattern:
        return "all_zero_pattern";
    case Status::no_sidelobes:
        return "no_sidelobes";
    case Status::beam_too_wide:
        return "beam_too_wide";
    case Status::io_error:
        return "io_error";
    case Status::internal:
        return "internal";
    }
    return "unknown";
}

void GeometryConfig::validate() const {
    if (!(radius_lambda > 0.0) || !std::isfinite(radius_lambda))
        throw InvalidConfigError("geometry.radius_lambda must be positive, got " +
                                 std::to_string(radius_lambda));
    if (!(dx_lambda > 0.0) || !std::isfinite(dx_lambda))
        throw InvalidConfigError("geometry.dx_lambda must be positive");
    if (!(dy_lambda > 0.0) || !std::isfinite(dy_lambda))
        throw InvalidConfigError("geometry.dy_lambda must be positive");
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw InvalidConfigError("geometry.frequency_hz must be positive");
    if (!(grid_scale > 0.0) || !std::isfinite(grid_scale))
        throw InvalidConfigError("geometry.grid_scale must be positive");
}

std::vector<std::pair<double, double>> synthesize_sector(const GeometryConfig &cfg) {
    cfg.validate();

    const double px = cfg.grid_scale * cfg.dx_lambda;
    const double py = cfg.grid_scale * cfg.dy_lambda;
    const double offset = cfg.half_cell_offset ? 0.5 : 0.0;
    const double r_max = cfg.radius_lambda * disc_slack;
    const double r2_max = r_max * r_max;

    // Lattice points ((i+off)*px, (j+off)*py), i, j >= 0, restricted to the
    // half-open wedge 0 <= y < x (strictly below the 45-degree diagonal, so
    // the 8 rotated copies tile the annulus without overlap) and the disc.
    std::vector<std::pair<double, double>> pts;
    const auto i_end = static_cast<long>(std::ceil(r_max / px)) + 1;
    for (long i = 0; i <= i_end; ++i) {
        const double x = (static_cast<double>(i) + offset) * px;
        if (x <= 0.0)
            continue;
        for (long j = 0;; ++j) {
            const double y = (static_cast<double>(j) + offset) * py;
            if (y >= x)
                break; // wedge boundary: the diagonal belongs to the next sector
            if (y > r_max)
                break; // already outside the disc; larger j only recedes further
            if (x * x + y * y <= r2_max)
                pts.emplace_back(x, y);
        }
    }

    if (pts.empty())
        throw DegenerateApertureError("no lattice points inside radius " +
                                      std::to_string(cfg.radius_lambda) +
                                      " wavelengths; aperture is degenerate");

    // Stable slot order: by radius, then polar angle. Ties in radius are
    // broken deterministically so chromosome slots never depend on insertion
    // order.
    std::sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) {
        const double ra = a.first * a.first + a.second * a.second;
        const double rb = b.first * b.first + b.second * b.second;
        if (ra != rb)
            return ra < rb;
        const double ta = std::atan2(a.second, a.first);
        const double tb = std::atan2(b.second, b.first);
        return ta < tb;
    });
    return pts;
}

ArrayLayout build_layout(const GeometryConfig &cfg) {
    const auto sector = synthesize_sector(cfg);

    ArrayLayout layout;
    layout.config = cfg;
    layout.sector_size = sector.size();
    layout.chromosome_len = sector.size() + 1;
    layout.elements.reserve(8 * sector.size() + 1);

    for (std::int32_t s = 0; s < 8; ++s) {
        const double ang = static_cast<double>(s) * std::numbers::pi / 4.0;
        const double c = std::cos(ang);
        const double sn = std::sin(ang);
        for (std::size_t k = 0; k < sector.size(); ++k) {
            const auto [x, y] = sector[k];
            layout.elements.push_back(Element{c * x - sn * y, sn * x + c * y, s,
                                              static_cast<std::int32_t>(k)});
        }
    }
    layout.elements.push_back(
        Element{0.0, 0.0, -1, static_cast<std::int32_t>(layout.chromosome_len - 1)});
    return layout;
}

ArrayLayout layout_from_positions(const std::vector<double> &x_lambda,
                                  const std::vector<double> &y_lambda) {
    if (x_lambda.size() != y_lambda.size())
        throw InvalidConfigError("position arrays differ in length");
    if (x_lambda.empty())
        throw DegenerateApertureError("empty position list");

    ArrayLayout layout;
    layout.config = GeometryConfig{};
    layout.config.radius_lambda = 0.0; // not meaningful for explicit positions
    double r2 = 0.0;
    layout.elements.reserve(x_lambda.size());
    for (std::size_t k = 0; k < x_lambda.size(); ++k) {
        layout.elements.push_back(
            Element{x_lambda[k], y_lambda[k], -1, static_cast<std::int32_t>(k)});
        r2 = std::max(r2, x_lambda[k] * x_lambda[k] + y_lambda[k] * y_lambda[k]);
    }
    layout.config.radius_lambda = std::sqrt(r2);
    layout.sector_size = 0;
    layout.chromosome_len = x_lambda.size(); // identity slot map
    return layout;
}

std::size_t ArrayLayout::slot_multiplicity(std::size_t slot) const {
    if (slot >= chromosome_len)
        throw InvalidConfigError("slot index " + std::to_string(slot) + " out of range");
    if (sector_size == 0)
        return 1; // explicit-position layout: identity map
    return slot + 1 == chromosome_len ? 1 : 8;
}

std::vector<double> ArrayLayout::expand_chromosome(
    const std::vector<std::uint8_t> &chromosome) const {
    if (chromosome.size() != chromosome_len)
        throw InvalidConfigError("chromosome length " + std::to_string(chromosome.size()) +
                                 " does not match layout chromosome_len " +
                                 std::to_string(chromosome_len));
    std::vector<double> weights(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto slot = static_cast<std::size_t>(elements[e].slot);
        double w = chromosome[slot] ? 1.0 : 0.0;
        if (!config.center_optimizable && elements[e].sector < 0 && sector_size > 0)
            w = 1.0; // pinned central element
        weights[e] = w;
    }
    return weights;
}

} // namespace octarray
