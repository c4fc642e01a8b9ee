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

#include "octarray/metrics.hpp"
#include "octarray/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace octarray {

namespace {

// Half-power level relative to the peak: 10*log10(1/2) on a power scale,
// i.e. -3.0103 dB rather than a rounded -3.
const double half_power_db = 10.0 * std::log10(0.5);

void check_cut(const std::vector<double> &theta_deg, const std::vector<double> &mag_db,
               double floor_db) {
    if (theta_deg.size() != mag_db.size())
        throw InvalidConfigError("cut angle and magnitude arrays differ in length");
    if (theta_deg.size() < 3)
        throw InvalidConfigError("cut must contain at least 3 samples");
    const double peak = *std::max_element(mag_db.begin(), mag_db.end());
    if (peak <= floor_db)
        throw AllZeroPatternError("cut is entirely at the floor level; no pattern to measure");
}

std::size_t peak_index_of(const std::vector<double> &mag_db) {
    return static_cast<std::size_t>(
        std::max_element(mag_db.begin(), mag_db.end()) - mag_db.begin());
}

// First strict local minimum walking from the peak toward +-1 direction;
// plateaus are crossed to their far end, so the null of a flat-bottomed main
// lobe is its farthest equal sample. Returns the null index, or npos when
// the cut never turns back up on that side.
std::size_t walk_to_null(const std::vector<double> &mag_db, std::size_t peak, int dir) {
    const std::size_t n = mag_db.size();
    std::size_t i = peak;
    while (true) {
        const std::size_t next = static_cast<std::size_t>(static_cast<long>(i) + dir);
        if (dir < 0 ? i == 0 : next >= n)
            return static_cast<std::size_t>(-1); // monotone to the edge: no null
        if (mag_db[next] > mag_db[i])
            return i; // turned up: i is the first strict local minimum
        i = next;     // descending or flat: keep walking (plateau rule)
    }
}

} // namespace

double extract_sll(const std::vector<double> &theta_deg, const std::vector<double> &mag_db,
                   double floor_db) {
    check_cut(theta_deg, mag_db, floor_db);
    const std::size_t peak = peak_index_of(mag_db);
    const std::size_t left = walk_to_null(mag_db, peak, -1);
    const std::size_t right = walk_to_null(mag_db, peak, +1);
    const auto npos = static_cast<std::size_t>(-1);
    if (left == npos || right == npos)
        throw NoSidelobesError("main lobe reaches the edge of the cut; no sidelobe region");

    // Worst sample strictly outside the null-to-null interval, relative to
    // the peak. The nulls themselves belong to the main lobe.
    double worst = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < mag_db.size(); ++i) {
        if (i >= left && i <= right)
            continue;
        worst = std::max(worst, mag_db[i]);
        found = true;
    }
    if (!found)
        throw NoSidelobesError("null-to-null main lobe spans the entire cut");
    return worst - mag_db[peak];
}

double extract_hpbw(const std::vector<double> &theta_deg, const std::vector<double> &mag_db,
                    double floor_db) {
    check_cut(theta_deg, mag_db, floor_db);
    const std::size_t peak = peak_index_of(mag_db);
    const double level = mag_db[peak] + half_power_db;

    // Walk outward to the first sample below the half-power level on each
    // side, then place the crossing by linear interpolation between that
    // sample and its inner neighbour.
    auto crossing = [&](int dir) -> double {
        std::size_t i = peak;
        while (true) {
            if (dir < 0 ? i == 0 : i + 1 >= mag_db.size())
                throw BeamTooWideError("half-power level not reached inside the cut");
            const std::size_t next = static_cast<std::size_t>(static_cast<long>(i) + dir);
            if (mag_db[next] < level) {
                const double frac = (mag_db[i] - level) / (mag_db[i] - mag_db[next]);
                return theta_deg[i] + frac * (theta_deg[next] - theta_deg[i]);
            }
            i = next;
        }
    };
    const double lo = crossing(-1);
    const double hi = crossing(+1);
    return hi - lo;
}

CutMetrics extract_metrics(const std::vector<double> &theta_deg,
                           const std::vector<double> &mag_db, double floor_db) {
    CutMetrics m{};
    m.sll_db = extract_sll(theta_deg, mag_db, floor_db);
    m.hpbw_deg = extract_hpbw(theta_deg, mag_db, floor_db);
    m.peak_index = peak_index_of(mag_db);
    m.peak_db = mag_db[m.peak_index];
    return m;
}

} // namespace octarray
