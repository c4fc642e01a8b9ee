/* SPDX-License-Identifier: Apache-2.0
 *
 * octarray - circular-aperture phased-array synthesis and thinning toolkit
 * Copyright 2026 octarray developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * C API of the octarray shared library. All functions return a status code
 * (OCTARRAY_OK == 0 on success); on failure a human-readable message is
 * available from octarray_last_error() until the next call on the same
 * thread. Configs are JSON documents; see README for the schema. Strings
 * returned through char** outputs are heap-allocated and must be released
 * with octarray_string_free().
 */

#ifndef OCTARRAY_H
#define OCTARRAY_H

#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#define OCTARRAY_API __declspec(dllexport)
#else
#define OCTARRAY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; stable values, mirrored from the core library. */
typedef enum octarray_status {
    OCTARRAY_OK = 0,
    OCTARRAY_E_INVALID_CONFIG = 1,
    OCTARRAY_E_DEGENERATE_APERTURE = 2,
    OCTARRAY_E_ALL_ZERO_PATTERN = 3,
    OCTARRAY_E_NO_SIDELOBES = 4,
    OCTARRAY_E_BEAM_TOO_WIDE = 5,
    OCTARRAY_E_IO = 6,
    OCTARRAY_E_INTERNAL = 7
} octarray_status;

/* Element pattern selector for octarray_element_gain. */
#define OCTARRAY_ELEMENT_SEPARABLE 0
#define OCTARRAY_ELEMENT_AZIMUTH_SYMMETRIC 1

/* Opaque aperture layout handle. */
typedef struct octarray_layout octarray_layout;

/* Library semantic version, e.g. "1.0.0". Static storage; do not free. */
OCTARRAY_API const char *octarray_version(void);

/* Symbolic name of a status code ("ok", "invalid_config", ...). Static. */
OCTARRAY_API const char *octarray_status_name(octarray_status s);

/* Message of the most recent failure on the calling thread; empty string
 * when the last call succeeded. Thread-local storage; do not free. */
OCTARRAY_API const char *octarray_last_error(void);

/* ---- layout ----------------------------------------------------------- */

/* Builds a circular-aperture layout from a geometry config JSON object
 * (e.g. {"radius_lambda": 15.0}; all keys optional). On success *out owns
 * the layout; release with octarray_layout_free. */
OCTARRAY_API octarray_status octarray_layout_build(const char *geometry_json,
                                                   octarray_layout **out);

OCTARRAY_API void octarray_layout_free(octarray_layout *layout);

/* Element count (8 * sector + 1), or -1 on null handle. */
OCTARRAY_API int32_t octarray_layout_n_total(const octarray_layout *layout);

/* Thinning chromosome length (sector + 1), or -1 on null handle. */
OCTARRAY_API int32_t octarray_layout_chromosome_len(const octarray_layout *layout);

/* Copies element positions (wavelengths) into caller buffers of the given
 * capacity; fails with OCTARRAY_E_INVALID_CONFIG when capacity is short. */
OCTARRAY_API octarray_status octarray_layout_positions(const octarray_layout *layout,
                                                       double *x_lambda, double *y_lambda,
                                                       int32_t capacity);

/* Expands a binary chromosome (chromosome_len bytes, 0/1, central slot last)
 * to per-element weights (capacity >= n_total). */
OCTARRAY_API octarray_status octarray_layout_expand(const octarray_layout *layout,
                                                    const uint8_t *chromosome,
                                                    int32_t chromosome_len, double *weights,
                                                    int32_t capacity);

/* ---- excitation and pattern ------------------------------------------- */

/* Kaiser-profile taper over n points: T(i) = I0(alpha*sqrt(1-x^2))/I0(alpha)
 * with x = 2*(i - n/2)/n; out must hold n doubles. */
OCTARRAY_API octarray_status octarray_taper_1d(int32_t n, double alpha, double *out);

/* Radial taper weights for a layout (out capacity >= n_total). */
OCTARRAY_API octarray_status octarray_radial_taper(const octarray_layout *layout, double alpha,
                                                   double *out, int32_t capacity);

/* Element power-pattern field magnitude at (theta, phi) radians. */
OCTARRAY_API octarray_status octarray_element_gain(double theta_rad, double phi_rad,
                                                   int32_t mode, double *out);

/* Complex array factor of the layout under per-element weights (length
 * n_total) at one angle. */
OCTARRAY_API octarray_status octarray_array_factor(const octarray_layout *layout,
                                                   const double *weights, int32_t n_weights,
                                                   double theta_rad, double phi_rad,
                                                   double *re, double *im);

/* Principal-plane cut for per-element weights. options_json may override
 * {"cut_step_deg", "cut_phi_deg", "floor_db", "element_mode"}; pass NULL or
 * "{}" for defaults. Writes up to capacity samples and the true sample count
 * to *n_out; when capacity is too small, fails after reporting the required
 * count in *n_out. theta_deg/mag_db may be NULL when capacity is 0 (size
 * query). */
OCTARRAY_API octarray_status octarray_compute_cut(const octarray_layout *layout,
                                                  const double *weights, int32_t n_weights,
                                                  const char *options_json, double *theta_deg,
                                                  double *mag_db, int32_t capacity,
                                                  int32_t *n_out);

/* SLL (dB relative to peak) and HPBW (degrees) of a cut given as parallel
 * angle/magnitude arrays. */
OCTARRAY_API octarray_status octarray_cut_metrics(const double *theta_deg, const double *mag_db,
                                                  int32_t n, double *sll_db, double *hpbw_deg);

/* ---- experiment runner ------------------------------------------------ */

/* Each runner takes a full experiment config JSON document (all keys
 * optional; see README) and returns a JSON summary through *result_json.
 * Artifacts are written under the config's output_dir. Release the returned
 * string with octarray_string_free. */
OCTARRAY_API octarray_status octarray_run_synth(const char *config_json, char **result_json);
OCTARRAY_API octarray_status octarray_run_taper(const char *config_json, char **result_json);
OCTARRAY_API octarray_status octarray_run_single(const char *config_json, char **result_json);
OCTARRAY_API octarray_status octarray_run_sweep(const char *config_json, char **result_json);

/* Pattern re-evaluation of a stored activation CSV (path in activation_csv). */
OCTARRAY_API octarray_status octarray_run_pattern(const char *config_json,
                                                  const char *activation_csv,
                                                  char **result_json);

OCTARRAY_API void octarray_string_free(char *s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OCTARRAY_H */
