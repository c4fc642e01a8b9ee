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

#ifndef OCTARRAY_ERROR_HPP
#define OCTARRAY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace octarray {

/// Status codes shared between the C++ exceptions and the C API.
/// Values are stable; new codes may only be appended.
enum class Status : int {
    ok = 0,
    invalid_config = 1,     ///< bad parameter value, malformed JSON, length mismatch
    degenerate_aperture = 2,///< geometry produced no elements (radius too small)
    all_zero_pattern = 3,   ///< pattern metrics requested on an all-zero excitation
    no_sidelobes = 4,       ///< cut has no sidelobe region outside the main lobe
    beam_too_wide = 5,      ///< -3 dB crossing not found inside the cut
    io_error = 6,           ///< filesystem failure (open/write/rename)
    internal = 7,           ///< unexpected failure; indicates a bug
};

const char *status_name(Status s) noexcept;

/// Base class for all octarray errors. Carries the Status that the C API
/// reports for this failure.
class Error : public std::runtime_error {
  public:
    Error(Status code, const std::string &msg) : std::runtime_error(msg), code_(code) {}
    Status code() const noexcept { return code_; }

  private:
    Status code_;
};

struct InvalidConfigError : Error {
    explicit InvalidConfigError(const std::string &msg) : Error(Status::invalid_config, msg) {}
};

struct DegenerateApertureError : Error {
    explicit DegenerateApertureError(const std::string &msg) : Error(Status::degenerate_aperture, msg) {}
};

struct AllZeroPatternError : Error {
    explicit AllZeroPatternError(const std::string &msg) : Error(Status::all_zero_pattern, msg) {}
};

struct NoSidelobesError : Error {
    explicit NoSidelobesError(const std::string &msg) : Error(Status::no_sidelobes, msg) {}
};

struct BeamTooWideError : Error {
    explicit BeamTooWideError(const std::string &msg) : Error(Status::beam_too_wide, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string &msg) : Error(Status::io_error, msg) {}
};

} // namespace octarray

#endif // OCTARRAY_ERROR_HPP
