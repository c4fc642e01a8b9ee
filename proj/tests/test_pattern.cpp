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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "octarray/error.hpp"
#include "octarray/pattern.hpp"
#include "octarray/pso.hpp" // Rng, for reproducible random cases

#include <cmath>
#include <complex>
#include <numbers>

using namespace octarray;

namespace {

constexpr double deg = std::numbers::pi / 180.0;

// Independent oracle: same array-factor definition evaluated in long double
// with reversed element order, so it shares no code path or rounding pattern
// with the implementation.
std::complex<double> naive_array_factor(const std::vector<double> &x,
                                        const std::vector<double> &y,
                                        const std::vector<double> &w, double theta,
                                        double phi) {
    const long double u = std::sin((long double)theta) * std::cos((long double)phi);
    const long double v = std::sin((long double)theta) * std::sin((long double)phi);
    long double re = 0.0L, im = 0.0L;
    for (std::size_t e = x.size(); e-- > 0;) {
        const long double ph = 2.0L * std::numbers::pi_v<long double> *
                               ((long double)x[e] * u + (long double)y[e] * v);
        re += (long double)w[e] * std::cos(ph);
        im += (long double)w[e] * std::sin(ph);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

GeometryConfig geom(double radius) {
    GeometryConfig g;
    g.radius_lambda = radius;
    return g;
}

} // namespace

TEST_CASE("element pattern values") {
    // Boresight is unity in both modes.
    CHECK(element_gain(0.0, 0.0, ElementMode::separable) == 1.0);
    CHECK(element_gain(0.0, 1.2, ElementMode::azimuth_symmetric) == 1.0);

    // cos^2(60deg) = 1/4.
    CHECK(element_gain(60.0 * deg, 0.0, ElementMode::separable) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(element_gain(60.0 * deg, 0.0, ElementMode::azimuth_symmetric) ==
          doctest::Approx(0.25).epsilon(1e-12));

    // The separable model also rolls off in azimuth; the symmetric one does
    // not. On the principal phi = 0 cut they coincide.
    CHECK(element_gain(30.0 * deg, 45.0 * deg, ElementMode::separable) ==
          doctest::Approx(0.75 * 0.5).epsilon(1e-12));
    CHECK(element_gain(30.0 * deg, 45.0 * deg, ElementMode::azimuth_symmetric) ==
          doctest::Approx(0.75).epsilon(1e-12));
    for (double theta = -80.0; theta <= 80.0; theta += 7.0)
        CHECK(element_gain(theta * deg, 0.0, ElementMode::separable) ==
              element_gain(theta * deg, 0.0, ElementMode::azimuth_symmetric));
}

TEST_CASE("two-element array factor") {
    const std::vector<double> x{0.0, 0.5}, y{0.0, 0.0};

    // Boresight: in-phase sum of the weights, exactly.
    auto af = array_factor(x, y, {1.0, 1.0}, 0.0, 0.0);
    CHECK(af.real() == 2.0);
    CHECK(af.imag() == 0.0);

    // Endfire (theta = 90deg, phi = 0): the half-wavelength separation puts
    // the two elements in anti-phase, so the pair cancels.
    af = array_factor(x, y, {1.0, 1.0}, 90.0 * deg, 0.0);
    CHECK(std::abs(af) < 1e-12);

    // Same geometry rotated into y: cancellation moves to phi = 90deg.
    af = array_factor(y, x, {1.0, 1.0}, 90.0 * deg, 90.0 * deg);
    CHECK(std::abs(af) < 1e-12);
}

TEST_CASE("boresight array factor equals the weight sum exactly") {
    Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 20);
        std::vector<double> x(n), y(n), w(n);
        for (std::size_t e = 0; e < n; ++e) {
            x[e] = rng.uniform(-10.0, 10.0);
            y[e] = rng.uniform(-10.0, 10.0);
            w[e] = rng.uniform(-2.0, 2.0);
        }
        double sum = 0.0;
        for (std::size_t e = 0; e < n; ++e)
            sum += w[e]; // same accumulation order as the implementation
        const auto af = array_factor(x, y, w, 0.0, 0.0);
        CHECK(af.real() == sum);
        CHECK(af.imag() == 0.0);
    }
}

TEST_CASE("array factor matches an independent oracle to 1e-12 relative") {
    Rng rng(20260815);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 16);
        std::vector<double> x(n), y(n), w(n);
        for (std::size_t e = 0; e < n; ++e) {
            x[e] = rng.uniform(-8.0, 8.0);
            y[e] = rng.uniform(-8.0, 8.0);
            w[e] = rng.uniform(0.0, 1.0);
        }
        const double theta = rng.uniform(-90.0, 90.0) * deg;
        const double phi = rng.uniform(0.0, 360.0) * deg;
        const auto got = array_factor(x, y, w, theta, phi);
        const auto want = naive_array_factor(x, y, w, theta, phi);
        const double scale = std::max({std::abs(want), std::abs(got), 1e-30});
        CHECK(std::abs(got - want) / scale <= 1e-12);
    }
}

TEST_CASE("pattern of a symmetric layout repeats every 45 degrees of azimuth") {
    const ArrayLayout layout = build_layout(geom(8.0));
    std::vector<double> x(layout.n_total()), y(layout.n_total());
    for (std::size_t e = 0; e < layout.n_total(); ++e) {
        x[e] = layout.elements[e].x_lambda;
        y[e] = layout.elements[e].y_lambda;
    }

    Rng rng(99);
    for (int c = 0; c < 20; ++c) {
        std::vector<std::uint8_t> chromosome(layout.chromosome_len);
        for (auto &bit : chromosome)
            bit = rng.bernoulli(0.5) ? 1 : 0;
        chromosome[0] = 1; // keep at least one orbit active
        const auto w = layout.expand_chromosome(chromosome);
        for (int a = 0; a < 25; ++a) {
            const double theta = rng.uniform(0.0, 90.0) * deg;
            const double phi = rng.uniform(0.0, 360.0) * deg;
            const double m0 = std::abs(array_factor(x, y, w, theta, phi));
            const double m1 = std::abs(array_factor(x, y, w, theta, phi + 45.0 * deg));
            CHECK(std::abs(m0 - m1) <=
                  1e-9 * std::max({m0, m1, 1e-6 * static_cast<double>(layout.n_total())}));
        }
    }
}

TEST_CASE("compute_cut evaluates the principal plane") {
    const ArrayLayout layout = build_layout(geom(4.0));
    const std::vector<double> w(layout.n_total(), 1.0);
    PatternConfig pat;
    pat.cut_step_deg = 0.5;
    const PatternCut cut = compute_cut(layout, w, pat);

    REQUIRE(cut.theta_deg.size() == 361);
    CHECK(cut.theta_deg.front() == doctest::Approx(-90.0));
    CHECK(cut.theta_deg.back() == doctest::Approx(90.0));

    // Peak at boresight: 20*log10(n_total) for the all-on aperture.
    const std::size_t mid = cut.theta_deg.size() / 2;
    CHECK(cut.theta_deg[mid] == doctest::Approx(0.0));
    CHECK(cut.mag_db[mid] == doctest::Approx(20.0 * std::log10(41.0)).epsilon(1e-12));

    // Uniform real weights give a theta-symmetric cut on the phi = 0 plane.
    for (std::size_t a = 0; a < cut.theta_deg.size(); ++a)
        CHECK(cut.mag_db[a] ==
              doctest::Approx(cut.mag_db[cut.theta_deg.size() - 1 - a]).epsilon(1e-9));

    // Spot-check one sample against the direct expression.
    const double theta = cut.theta_deg[100] * deg;
    CHECK(cut.mag_db[100] ==
          doctest::Approx(total_pattern_db(layout, w, theta, 0.0, pat)).epsilon(1e-12));
}

TEST_CASE("cut evaluator agrees with the direct cut") {
    const ArrayLayout layout = build_layout(geom(5.0));
    PatternConfig pat;
    pat.cut_step_deg = 0.25;
    const CutEvaluator evaluator(layout, pat);

    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<std::uint8_t> chromosome(layout.chromosome_len);
        for (auto &bit : chromosome)
            bit = rng.bernoulli(0.6) ? 1 : 0;
        chromosome[2] = 1;
        const auto &fast = evaluator.evaluate(chromosome);
        const PatternCut slow = compute_cut(layout, layout.expand_chromosome(chromosome), pat);
        REQUIRE(fast.size() == slow.mag_db.size());
        for (std::size_t a = 0; a < fast.size(); ++a)
            CHECK(fast[a] == doctest::Approx(slow.mag_db[a]).epsilon(1e-9));
    }
}

TEST_CASE("cut evaluator honours a locked center") {
    GeometryConfig g = geom(4.0);
    g.center_optimizable = false;
    const ArrayLayout layout = build_layout(g);
    PatternConfig pat;
    pat.cut_step_deg = 1.0;
    const CutEvaluator evaluator(layout, pat);

    // Center bit 0, but the locked center still radiates: the evaluator and
    // the expanded-weight cut agree.
    std::vector<std::uint8_t> chromosome(layout.chromosome_len, 0);
    chromosome[0] = 1;
    const auto &fast = evaluator.evaluate(chromosome);
    const PatternCut slow = compute_cut(layout, layout.expand_chromosome(chromosome), pat);
    for (std::size_t a = 0; a < fast.size(); ++a)
        CHECK(fast[a] == doctest::Approx(slow.mag_db[a]).epsilon(1e-9));
}

TEST_CASE("degenerate excitations are rejected") {
    const ArrayLayout layout = build_layout(geom(4.0));
    PatternConfig pat;
    CHECK_THROWS_AS((void)compute_cut(layout, std::vector<double>(41, 0.0), pat),
                    AllZeroPatternError);
    CHECK_THROWS_AS((void)compute_cut(layout, std::vector<double>(7, 1.0), pat),
                    InvalidConfigError);

    const CutEvaluator evaluator(layout, pat);
    CHECK_THROWS_AS((void)evaluator.evaluate(std::vector<std::uint8_t>(6, 0)),
                    AllZeroPatternError);
    CHECK_THROWS_AS((void)evaluator.evaluate(std::vector<std::uint8_t>(3, 1)),
                    InvalidConfigError);
}

TEST_CASE("floor clamps deep nulls") {
    // Two anti-phase elements at theta = 90deg: |AF| ~ 0, which must clamp
    // to the configured floor instead of producing -inf.
    const ArrayLayout layout = layout_from_positions({0.0, 0.5}, {0.0, 0.0});
    PatternConfig pat;
    pat.cut_step_deg = 30.0; // samples exactly at -90, ..., 0, ..., 90
    pat.floor_db = -100.0;
    const PatternCut cut = compute_cut(layout, {1.0, 1.0}, pat);
    CHECK(cut.mag_db.front() == -100.0);
    CHECK(cut.mag_db.back() == -100.0);
    for (const double m : cut.mag_db)
        CHECK(m >= -100.0);
}

TEST_CASE("compute_grid covers the hemisphere consistently") {
    const ArrayLayout layout = build_layout(geom(4.0));
    const std::vector<double> w(layout.n_total(), 1.0);
    PatternConfig pat;
    pat.grid_step_deg = 15.0;
    const PatternGrid grid = compute_grid(layout, w, pat);

    REQUIRE(grid.theta_deg.size() == 13); // -90..90 step 15
    REQUIRE(grid.phi_deg.size() == 24);   // 0..345 step 15
    REQUIRE(grid.mag_db.size() == grid.theta_deg.size() * grid.phi_deg.size());

    for (std::size_t t = 0; t < grid.theta_deg.size(); t += 3)
        for (std::size_t p = 0; p < grid.phi_deg.size(); p += 5) {
            const double want = total_pattern_db(layout, w, grid.theta_deg[t] * deg,
                                                 grid.phi_deg[p] * deg, pat);
            CHECK(grid.mag_db[t * grid.phi_deg.size() + p] ==
                  doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("invalid pattern configs are rejected") {
    PatternConfig pat;
    pat.cut_step_deg = 0.0;
    CHECK_THROWS_AS(pat.validate(), InvalidConfigError);
    pat = PatternConfig{};
    pat.floor_db = 10.0;
    CHECK_THROWS_AS(pat.validate(), InvalidConfigError);
    pat = PatternConfig{};
    pat.grid_step_deg = -1.0;
    CHECK_THROWS_AS(pat.validate(), InvalidConfigError);
}
