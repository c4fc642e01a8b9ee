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

#ifndef OCTARRAY_GEOMETRY_HPP
#define OCTARRAY_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace octarray {

/// Parameters of the circular-aperture layout builder. Distances are in
/// wavelengths at the design frequency unless suffixed otherwise.
struct GeometryConfig {
    double radius_lambda = 15.0; ///< aperture radius R
    double dx_lambda = 0.5;      ///< element spacing along x (half wavelength)
    double dy_lambda = 0.5;      ///< element spacing along y
    double frequency_hz = 12e9;  ///< design frequency (metric export only)

    /// Lattice pitch multiplier: sector points sit on a grid of pitch
    /// grid_scale * d. The default 2.0 (one-wavelength pitch) reproduces the
    /// reference element counts, e.g. 41 at R = 4 and 673 at R = 15.
    double grid_scale = 2.0;
    /// Cell-centered lattice: points at ((i+1/2)*pitch, (j+1/2)*pitch). The
    /// off-axis placement keeps element orbits full-length (8 per slot) and
    /// is part of the calibrated counting rule.
    bool half_cell_offset = true;
    /// When false the central element is pinned active instead of occupying
    /// an optimizable chromosome slot.
    bool center_optimizable = true;

    void validate() const; ///< throws InvalidConfigError on bad values
};

/// One antenna element of the synthesized aperture.
struct Element {
    double x_lambda;      ///< position in wavelengths
    double y_lambda;
    std::int32_t sector;  ///< 0..7 for replicated sectors, -1 for the center
    std::int32_t slot;    ///< chromosome slot driving this element's weight
};

/// Circular-aperture array built from one 45-degree sector replicated by
/// 45-degree rotations plus a central element. Elements belonging to the same
/// rotation orbit share a chromosome slot, so a thinning chromosome of
/// length (n_total - 1) / 8 + 1 controls the full aperture while preserving
/// 8-fold symmetry.
struct ArrayLayout {
    GeometryConfig config;
    std::vector<Element> elements;    ///< sector-major order, center last
    std::size_t sector_size = 0;      ///< elements per 45-degree sector
    std::size_t chromosome_len = 0;   ///< sector_size + 1 (center slot last)

    std::size_t n_total() const { return elements.size(); }

    /// Orbit size of a chromosome slot: 8 for sector slots, 1 for the center.
    std::size_t slot_multiplicity(std::size_t slot) const;

    /// Maps a binary chromosome (one bit per slot, center slot last) onto
    /// per-element weights in element order. Throws InvalidConfigError when
    /// the chromosome length does not match, and pins the central element to
    /// 1 when center_optimizable is false.
    std::vector<double> expand_chromosome(const std::vector<std::uint8_t> &chromosome) const;
};

/// Generator points of the base sector: the 45-degree wedge 0 <= y < x of the
/// calibrated lattice, intersected with the R-disc. Sorted by (radius, angle)
/// so chromosome slots are stable across runs. Throws DegenerateApertureError
/// when the wedge is empty.
std::vector<std::pair<double, double>> synthesize_sector(const GeometryConfig &cfg);

/// Builds the full layout: 8 rotated copies of the sector followed by the
/// central element. n_total == 8 * sector_size + 1.
ArrayLayout build_layout(const GeometryConfig &cfg);

/// Wraps explicit element positions (wavelengths) as a degenerate layout with
/// one chromosome slot per element. Intended for direct pattern evaluation of
/// arbitrary apertures; the symmetry properties of built layouts do not apply.
ArrayLayout layout_from_positions(const std::vector<double> &x_lambda,
                                  const std::vector<double> &y_lambda);

} // namespace octarray

#endif // OCTARRAY_GEOMETRY_HPP
