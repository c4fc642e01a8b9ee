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

#include "octarray/io.hpp"
#include "octarray/error.hpp"

#include <json.hpp>
#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace octarray {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write(const fs::path &path, const std::string &content) {
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);

    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec)
        throw IoError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

std::string csv_table(const std::vector<std::string> &header,
                      const std::vector<std::vector<std::string>> &rows) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c)
            out += ',';
        out += header[c];
    }
    out += '\n';
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

std::string layout_csv(const ArrayLayout &layout) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(layout.n_total());
    for (std::size_t e = 0; e < layout.n_total(); ++e) {
        const auto &el = layout.elements[e];
        rows.push_back({std::to_string(e), format_double(el.x_lambda),
                        format_double(el.y_lambda), std::to_string(el.sector),
                        std::to_string(el.slot)});
    }
    return csv_table({"index", "x_lambda", "y_lambda", "sector", "slot"}, rows);
}

std::string weights_csv(const ArrayLayout &layout, const std::vector<double> &weights) {
    if (weights.size() != layout.n_total())
        throw InvalidConfigError("weights length does not match layout for CSV export");
    std::vector<std::vector<std::string>> rows;
    rows.reserve(layout.n_total());
    for (std::size_t e = 0; e < layout.n_total(); ++e) {
        const auto &el = layout.elements[e];
        rows.push_back({std::to_string(e), format_double(el.x_lambda),
                        format_double(el.y_lambda), std::to_string(el.sector),
                        std::to_string(el.slot), format_double(weights[e])});
    }
    return csv_table({"index", "x_lambda", "y_lambda", "sector", "slot", "weight"}, rows);
}

std::string cut_csv(const PatternCut &cut) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(cut.theta_deg.size());
    for (std::size_t a = 0; a < cut.theta_deg.size(); ++a)
        rows.push_back({format_double(cut.theta_deg[a]), format_double(cut.mag_db[a])});
    return csv_table({"theta_deg", "mag_db"}, rows);
}

std::string grid_csv(const PatternGrid &grid) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(grid.mag_db.size());
    for (std::size_t t = 0; t < grid.theta_deg.size(); ++t)
        for (std::size_t p = 0; p < grid.phi_deg.size(); ++p)
            rows.push_back({format_double(grid.theta_deg[t]), format_double(grid.phi_deg[p]),
                            format_double(grid.mag_db[t * grid.phi_deg.size() + p])});
    return csv_table({"theta_deg", "phi_deg", "mag_db"}, rows);
}

namespace {

double parse_cell(const std::string &cell, const char *what, std::size_t line_no) {
    double v = 0.0;
    const char *first = cell.data();
    const char *last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw InvalidConfigError("activation CSV line " + std::to_string(line_no) +
                                 ": cannot parse " + what + " value '" + cell + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

} // namespace

ParsedActivation parse_weights_csv(const std::string &content) {
    std::stringstream ss(content);
    std::string line;
    if (!std::getline(ss, line))
        throw InvalidConfigError("activation CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    const auto header = split_csv_line(line);
    auto col_of = [&](const std::string &name) -> std::size_t {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name)
                return c;
        throw InvalidConfigError("activation CSV is missing required column '" + name + "'");
    };
    const std::size_t cx = col_of("x_lambda");
    const std::size_t cy = col_of("y_lambda");
    const std::size_t cw = col_of("weight");

    ParsedActivation out;
    std::size_t line_no = 1;
    while (std::getline(ss, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() <= std::max({cx, cy, cw}))
            throw InvalidConfigError("activation CSV line " + std::to_string(line_no) +
                                     " has too few columns");
        out.x_lambda.push_back(parse_cell(cells[cx], "x_lambda", line_no));
        out.y_lambda.push_back(parse_cell(cells[cy], "y_lambda", line_no));
        out.weights.push_back(parse_cell(cells[cw], "weight", line_no));
    }
    if (out.x_lambda.empty())
        throw InvalidConfigError("activation CSV contains no data rows");
    return out;
}

fs::path resolve_run_dir(const fs::path &base) {
    std::error_code ec;
    if (!fs::exists(base, ec)) {
        fs::create_directories(base, ec);
        if (ec)
            throw IoError("cannot create " + base.string() + ": " + ec.message());
        return base;
    }
    if (!fs::is_directory(base, ec))
        throw IoError(base.string() + " exists and is not a directory");
    if (fs::directory_iterator(base, ec) == fs::directory_iterator{})
        return base; // existing but empty

    // Occupied: pick the first unused versioned subdirectory.
    for (int v = 2; v < 100000; ++v) {
        const fs::path candidate = base / ("v" + std::to_string(v));
        if (!fs::exists(candidate, ec)) {
            fs::create_directories(candidate, ec);
            if (ec)
                throw IoError("cannot create " + candidate.string() + ": " + ec.message());
            return candidate;
        }
    }
    throw IoError("no free versioned subdirectory under " + base.string());
}

std::string crc32_hex(const std::string &bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef *>(bytes.data()),
                static_cast<uInt>(bytes.size()));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
    return buf;
}

std::string manifest_json(const fs::path &dir) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto name = entry.path().filename().string();
        if (name == "manifest.json" || name == "meta.json")
            continue; // the manifest excludes itself and the timestamp sidecar
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    nlohmann::json manifest;
    manifest["format"] = "octarray-manifest/1";
    manifest["files"] = nlohmann::json::array();
    for (const auto &f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in)
            throw IoError("cannot read " + f.string() + " for manifest");
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string bytes = buf.str();
        manifest["files"].push_back({{"name", f.filename().string()},
                                     {"bytes", bytes.size()},
                                     {"crc32", crc32_hex(bytes)}});
    }
    return manifest.dump(2) + "\n";
}

} // namespace octarray
