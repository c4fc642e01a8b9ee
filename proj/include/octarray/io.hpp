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

#ifndef OCTARRAY_IO_HPP
#define OCTARRAY_IO_HPP

#include "octarray/geometry.hpp"
#include "octarray/pattern.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace octarray {

/// Shortest round-trip decimal rendering of a double (std::to_chars), used
/// everywhere a number is serialized so artifacts are byte-deterministic.
std::string format_double(double v);

/// Writes content to path atomically: temp file in the same directory, then
/// rename. Throws IoError on failure.
void atomic_write(const std::filesystem::path &path, const std::string &content);

/// Simple CSV assembly: header row plus pre-rendered cells.
std::string csv_table(const std::vector<std::string> &header,
                      const std::vector<std::vector<std::string>> &rows);

/// layout.csv: index,x_lambda,y_lambda,sector,slot (element order).
std::string layout_csv(const ArrayLayout &layout);

/// weights CSV: layout columns plus a weight column.
std::string weights_csv(const ArrayLayout &layout, const std::vector<double> &weights);

/// cut CSV: theta_deg,mag_db.
std::string cut_csv(const PatternCut &cut);

/// grid CSV: theta_deg,phi_deg,mag_db (long form, theta-major).
std::string grid_csv(const PatternGrid &grid);

/// Parses a weights CSV produced by weights_csv; returns positions and
/// weights in file order. Throws InvalidConfigError on malformed input.
struct ParsedActivation {
    std::vector<double> x_lambda;
    std::vector<double> y_lambda;
    std::vector<double> weights;
};
ParsedActivation parse_weights_csv(const std::string &content);

/// Resolves the effective artifact directory: base itself when missing or
/// empty, otherwise the first unused versioned subdirectory base/v2, v3, ...
/// The directory is created. Throws IoError on filesystem failure.
std::filesystem::path resolve_run_dir(const std::filesystem::path &base);

/// manifest.json payload for a run directory: every regular file except the
/// manifest itself and the timestamp sidecar meta.json, with byte size and
/// zlib CRC-32, sorted by name. Repeat runs with the same config and seed
/// produce byte-identical manifests.
std::string manifest_json(const std::filesystem::path &dir);

/// CRC-32 (zlib polynomial) of a buffer, rendered as 8 hex digits.
std::string crc32_hex(const std::string &bytes);

} // namespace octarray

#endif // OCTARRAY_IO_HPP
