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

#include "octarray.h"

#include "octarray/error.hpp"
#include "octarray/experiment.hpp"
#include "octarray/geometry.hpp"
#include "octarray/io.hpp"
#include "octarray/metrics.hpp"
#include "octarray/pattern.hpp"
#include "octarray/taper.hpp"
#include "octarray/version.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

// The handle type is the C++ layout itself; the C side only ever sees the
// opaque pointer.
struct octarray_layout {
    octarray::ArrayLayout impl;
};

namespace {

thread_local std::string g_last_error;

octarray_status to_status(octarray::Status s) { return static_cast<octarray_status>(s); }

octarray_status fail(octarray::Status s, const std::string &msg) {
    g_last_error = msg;
    return to_status(s);
}

/// Runs fn, translating C++ exceptions into status codes and clearing the
/// error message on success.
template <typename Fn> octarray_status wrap(Fn &&fn) {
    try {
        fn();
        g_last_error.clear();
        return OCTARRAY_OK;
    } catch (const octarray::Error &e) {
        return fail(e.code(), e.what());
    } catch (const std::bad_alloc &) {
        return fail(octarray::Status::internal, "out of memory");
    } catch (const std::exception &e) {
        return fail(octarray::Status::internal, e.what());
    } catch (...) {
        return fail(octarray::Status::internal, "unknown error");
    }
}

octarray_status require(bool cond, const char *msg) {
    if (cond)
        return OCTARRAY_OK;
    return fail(octarray::Status::invalid_config, msg);
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

octarray_status run_with_config(const char *config_json, char **result_json,
                                nlohmann::json (*runner)(const octarray::ExperimentConfig &)) {
    if (octarray_status rc = require(config_json && result_json,
                                     "config_json and result_json must be non-null"))
        return rc;
    *result_json = nullptr;
    return wrap([&]() {
        const auto cfg = octarray::parse_experiment_config_text(config_json);
        const auto doc = runner(cfg);
        *result_json = dup_string(doc.dump(2) + "\n");
        if (!*result_json)
            throw std::bad_alloc();
    });
}

} // namespace

extern "C" {

const char *octarray_version(void) { return OCTARRAY_VERSION; }

const char *octarray_status_name(octarray_status s) {
    return octarray::status_name(static_cast<octarray::Status>(s));
}

const char *octarray_last_error(void) { return g_last_error.c_str(); }

octarray_status octarray_layout_build(const char *geometry_json, octarray_layout **out) {
    if (octarray_status rc =
            require(geometry_json && out, "geometry_json and out must be non-null"))
        return rc;
    *out = nullptr;
    return wrap([&]() {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(geometry_json);
        } catch (const nlohmann::json::parse_error &e) {
            throw octarray::InvalidConfigError(std::string("geometry JSON: ") + e.what());
        }
        // Reuse the experiment parser for identical key handling.
        nlohmann::json wrapper;
        wrapper["geometry"] = j;
        const auto cfg = octarray::parse_experiment_config(wrapper);
        auto handle = std::make_unique<octarray_layout>();
        handle->impl = octarray::build_layout(cfg.geometry);
        *out = handle.release();
    });
}

void octarray_layout_free(octarray_layout *layout) { delete layout; }

int32_t octarray_layout_n_total(const octarray_layout *layout) {
    return layout ? static_cast<int32_t>(layout->impl.n_total()) : -1;
}

int32_t octarray_layout_chromosome_len(const octarray_layout *layout) {
    return layout ? static_cast<int32_t>(layout->impl.chromosome_len) : -1;
}

octarray_status octarray_layout_positions(const octarray_layout *layout, double *x_lambda,
                                          double *y_lambda, int32_t capacity) {
    if (octarray_status rc =
            require(layout && x_lambda && y_lambda, "layout and buffers must be non-null"))
        return rc;
    return wrap([&]() {
        const auto &els = layout->impl.elements;
        if (static_cast<std::size_t>(capacity) < els.size())
            throw octarray::InvalidConfigError(
                "capacity " + std::to_string(capacity) + " is smaller than n_total " +
                std::to_string(els.size()));
        for (std::size_t e = 0; e < els.size(); ++e) {
            x_lambda[e] = els[e].x_lambda;
            y_lambda[e] = els[e].y_lambda;
        }
    });
}

octarray_status octarray_layout_expand(const octarray_layout *layout, const uint8_t *chromosome,
                                       int32_t chromosome_len, double *weights,
                                       int32_t capacity) {
    if (octarray_status rc =
            require(layout && chromosome && weights, "layout and buffers must be non-null"))
        return rc;
    return wrap([&]() {
        if (static_cast<std::size_t>(capacity) < layout->impl.n_total())
            throw octarray::InvalidConfigError("weights capacity is smaller than n_total");
        const std::vector<std::uint8_t> chr(chromosome, chromosome + chromosome_len);
        const auto w = layout->impl.expand_chromosome(chr);
        std::copy(w.begin(), w.end(), weights);
    });
}

octarray_status octarray_taper_1d(int32_t n, double alpha, double *out) {
    if (octarray_status rc = require(out != nullptr, "out must be non-null"))
        return rc;
    return wrap([&]() {
        if (n <= 0)
            throw octarray::InvalidConfigError("taper length must be positive");
        const auto w = octarray::taper_weights_1d(static_cast<std::size_t>(n), alpha);
        std::copy(w.begin(), w.end(), out);
    });
}

octarray_status octarray_radial_taper(const octarray_layout *layout, double alpha, double *out,
                                      int32_t capacity) {
    if (octarray_status rc = require(layout && out, "layout and out must be non-null"))
        return rc;
    return wrap([&]() {
        if (static_cast<std::size_t>(capacity) < layout->impl.n_total())
            throw octarray::InvalidConfigError("out capacity is smaller than n_total");
        const auto w = octarray::radial_taper(layout->impl, alpha);
        std::copy(w.begin(), w.end(), out);
    });
}

octarray_status octarray_element_gain(double theta_rad, double phi_rad, int32_t mode,
                                      double *out) {
    if (octarray_status rc = require(out != nullptr, "out must be non-null"))
        return rc;
    return wrap([&]() {
        if (mode != OCTARRAY_ELEMENT_SEPARABLE && mode != OCTARRAY_ELEMENT_AZIMUTH_SYMMETRIC)
            throw octarray::InvalidConfigError("unknown element mode " + std::to_string(mode));
        *out = octarray::element_gain(theta_rad, phi_rad,
                                      mode == OCTARRAY_ELEMENT_SEPARABLE
                                          ? octarray::ElementMode::separable
                                          : octarray::ElementMode::azimuth_symmetric);
    });
}

octarray_status octarray_array_factor(const octarray_layout *layout, const double *weights,
                                      int32_t n_weights, double theta_rad, double phi_rad,
                                      double *re, double *im) {
    if (octarray_status rc =
            require(layout && weights && re && im, "layout and buffers must be non-null"))
        return rc;
    return wrap([&]() {
        const auto &els = layout->impl.elements;
        if (static_cast<std::size_t>(n_weights) != els.size())
            throw octarray::InvalidConfigError("weights length does not match n_total");
        std::vector<double> x(els.size()), y(els.size());
        for (std::size_t e = 0; e < els.size(); ++e) {
            x[e] = els[e].x_lambda;
            y[e] = els[e].y_lambda;
        }
        const std::vector<double> w(weights, weights + n_weights);
        const auto af = octarray::array_factor(x, y, w, theta_rad, phi_rad);
        *re = af.real();
        *im = af.imag();
    });
}

octarray_status octarray_compute_cut(const octarray_layout *layout, const double *weights,
                                     int32_t n_weights, const char *options_json,
                                     double *theta_deg, double *mag_db, int32_t capacity,
                                     int32_t *n_out) {
    if (octarray_status rc =
            require(layout && weights && n_out, "layout, weights and n_out must be non-null"))
        return rc;
    return wrap([&]() {
        octarray::PatternConfig pat;
        if (options_json && options_json[0] != '\0') {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(options_json);
            } catch (const nlohmann::json::parse_error &e) {
                throw octarray::InvalidConfigError(std::string("options JSON: ") + e.what());
            }
            nlohmann::json wrapper;
            wrapper["pattern"] = j;
            pat = octarray::parse_experiment_config(wrapper).pattern;
        }
        const std::vector<double> w(weights, weights + n_weights);
        const auto cut = octarray::compute_cut(layout->impl, w, pat);
        *n_out = static_cast<int32_t>(cut.theta_deg.size());
        if (static_cast<std::size_t>(capacity) < cut.theta_deg.size())
            throw octarray::InvalidConfigError(
                "cut needs " + std::to_string(cut.theta_deg.size()) +
                " samples; capacity is " + std::to_string(capacity));
        if (!theta_deg || !mag_db)
            throw octarray::InvalidConfigError("theta_deg and mag_db must be non-null");
        std::copy(cut.theta_deg.begin(), cut.theta_deg.end(), theta_deg);
        std::copy(cut.mag_db.begin(), cut.mag_db.end(), mag_db);
    });
}

octarray_status octarray_cut_metrics(const double *theta_deg, const double *mag_db, int32_t n,
                                     double *sll_db, double *hpbw_deg) {
    if (octarray_status rc = require(theta_deg && mag_db && sll_db && hpbw_deg,
                                     "all buffers must be non-null"))
        return rc;
    return wrap([&]() {
        const std::vector<double> t(theta_deg, theta_deg + n);
        const std::vector<double> m(mag_db, mag_db + n);
        const auto metrics = octarray::extract_metrics(t, m);
        *sll_db = metrics.sll_db;
        *hpbw_deg = metrics.hpbw_deg;
    });
}

octarray_status octarray_run_synth(const char *config_json, char **result_json) {
    return run_with_config(config_json, result_json, &octarray::run_synth);
}

octarray_status octarray_run_taper(const char *config_json, char **result_json) {
    return run_with_config(config_json, result_json, &octarray::run_taper);
}

octarray_status octarray_run_single(const char *config_json, char **result_json) {
    return run_with_config(config_json, result_json, &octarray::run_single);
}

octarray_status octarray_run_sweep(const char *config_json, char **result_json) {
    return run_with_config(config_json, result_json, &octarray::run_sweep);
}

octarray_status octarray_run_pattern(const char *config_json, const char *activation_csv,
                                     char **result_json) {
    if (octarray_status rc = require(config_json && activation_csv && result_json,
                                     "all arguments must be non-null"))
        return rc;
    *result_json = nullptr;
    return wrap([&]() {
        const auto cfg = octarray::parse_experiment_config_text(config_json);
        const auto doc = octarray::run_pattern(cfg, activation_csv);
        *result_json = dup_string(doc.dump(2) + "\n");
        if (!*result_json)
            throw std::bad_alloc();
    });
}

void octarray_string_free(char *s) { std::free(s); }

} // extern "C"
