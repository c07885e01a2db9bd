// Copyright 2026 The qnetsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qnetsim/spectral.hpp"

using namespace qnetsim;

namespace {

constexpr double kPi = std::numbers::pi;

TimeSeries modes(const std::vector<std::pair<double, double>> &lw, double dt, std::size_t n) {
    TimeSeries s{dt, std::vector<cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto &[l, w] : lw) {
            s.values[j] += w * std::polar(1.0, -l * dt * static_cast<double>(j));
        }
    }
    return s;
}

std::vector<cplx> naive_dft(const TimeSeries &s) {
    const std::size_t n = s.size();
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t j = 0; j < n; ++j) {
            out[m] += s.values[j] * std::polar(1.0, 2.0 * kPi * static_cast<double>(m * j % n) / static_cast<double>(n));
        }
        out[m] *= s.dt;
    }
    return out;
}

} // namespace

TEST(Dfft, MatchesNaiveSum) {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> g;
    for (std::size_t n : {2U, 8U, 64U, 256U}) {
        TimeSeries s{0.3, std::vector<cplx>(n)};
        for (auto &v : s.values) {
            v = {g(rng), g(rng)};
        }
        const auto f = dfft(s);
        const auto want = naive_dft(s);
        for (std::size_t m = 0; m < n; ++m) {
            EXPECT_NEAR(std::abs(f.bins[m] - want[m]), 0.0, 1e-10 * static_cast<double>(n));
        }
        const auto back = inverse_dfft(f);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_NEAR(std::abs(back.values[j] - s.values[j]), 0.0, 1e-12);
        }
    }
}

TEST(Dfft, RejectsBadLengths) {
    EXPECT_THROW(dfft(TimeSeries{0.1, std::vector<cplx>(12)}), std::domain_error);
    EXPECT_THROW(dfft(TimeSeries{0.0, std::vector<cplx>(16)}), std::domain_error);
}

TEST(Dfft, OnGridModeLandsOnItsBin) {
    const double dt = 0.1;
    const std::size_t n = 128;
    const double grid = 2.0 * kPi / (n * dt);
    const auto f = dfft(modes({{-5.0 * grid, 1.0}}, dt, n));
    std::size_t best = 0;
    for (std::size_t m = 0; m < n; ++m) {
        if (std::abs(f.bins[m]) > std::abs(f.bins[best])) best = m;
    }
    EXPECT_EQ(f.signed_bin(best), -5);
    EXPECT_NEAR(f.omega(best), -5.0 * grid, 1e-12);
}

TEST(Dfft, TwoDimensionalTransformMatchesNaive) {
    Grid2 g{0.2, 0.3, 8, 4, std::vector<cplx>(32)};
    std::mt19937_64 rng(52);
    std::normal_distribution<double> d;
    for (auto &v : g.values) v = {d(rng), d(rng)};
    const auto f = dfft2(g);
    for (std::size_t m1 = 0; m1 < 8; ++m1) {
        for (std::size_t m2 = 0; m2 < 4; ++m2) {
            cplx want{};
            for (std::size_t a = 0; a < 8; ++a) {
                for (std::size_t b = 0; b < 4; ++b) {
                    want += g.at(a, b) * std::polar(1.0, 2.0 * kPi * (double(m1 * a) / 8.0 - double(m2 * b) / 4.0));
                }
            }
            EXPECT_NEAR(std::abs(f.at(m1, m2) - want * 0.06), 0.0, 1e-12);
        }
    }
}

class Refine : public ::testing::TestWithParam<double> {};

TEST_P(Refine, SingleOffGridModeExactLog) {
    const double dt = 0.05;
    const std::size_t n = 1024;
    const double grid = 2.0 * kPi / (n * dt);
    const double lambda = (37.0 + GetParam()) * grid - 3.0;
    const auto peaks = analyze(modes({{lambda, 0.8}}, dt, n), 0.02);
    ASSERT_EQ(peaks.size(), 1U);
    const double raw = std::abs(peaks[0].omega - lambda);
    const double err = std::abs(peaks[0].lambda - lambda);
    EXPECT_LE(err, 1e-2 * grid);
    EXPECT_LE(err, raw + 1e-15);
    EXPECT_NEAR(peaks[0].weight, 0.8, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Offsets, Refine, ::testing::Values(0.0, 0.1, 0.25, 0.3, 0.5, 0.71, 0.9));

TEST(RefineMethods, LinearizedIsFirstOrderInTheOffset) {
    const double dt = 0.05;
    const std::size_t n = 1024;
    const double grid = 2.0 * kPi / (n * dt);
    const double lambda = 40.05 * grid;
    const auto s = modes({{lambda, 1.0}}, dt, n);
    const auto lin = analyze(s, 0.02, true, Refinement::Linearized);
    ASSERT_EQ(lin.size(), 1U);
    EXPECT_LT(std::abs(lin[0].lambda - lambda), std::abs(lin[0].omega - lambda));
    EXPECT_LT(std::abs(lin[0].lambda - lambda), 0.02 * grid);
}

TEST(Peaks, ThresholdAndSideLobes) {
    const double dt = 0.1;
    const std::size_t n = 512;
    const auto s = modes({{-2.0, 0.6}, {1.1, 0.3}, {2.9, 0.01}}, dt, n);
    auto peaks = analyze(s, 0.05);
    ASSERT_EQ(peaks.size(), 2U);
    EXPECT_NEAR(peaks[0].lambda, -2.0, 5e-3);
    EXPECT_NEAR(peaks[1].lambda, 1.1, 5e-3);
    EXPECT_NEAR(peaks[0].weight, 0.6, 0.01);
    EXPECT_NEAR(peaks[1].weight, 0.3, 0.01);
    peaks = analyze(s, 0.005);
    EXPECT_EQ(peaks.size(), 3U);
    const auto raw = analyze(s, 0.05, false);
    for (const auto &p : raw) {
        EXPECT_FALSE(p.refined);
        EXPECT_EQ(p.lambda, p.omega);
    }
}

TEST(Components, ProjectionAndLeastSquares) {
    const double dt = 0.05;
    const std::size_t n = 1024;
    const auto s = modes({{-1.3, 0.7}, {2.2, 0.2}}, dt, n);
    EXPECT_NEAR(std::abs(component_at(s, -1.3) - 0.7), 0.0, 5e-3);
    const auto c = fit_components(s, {-1.3, 2.2});
    EXPECT_NEAR(std::abs(c[0] - 0.7), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c[1] - 0.2), 0.0, 1e-12);
    Grid2 g{dt, dt, 64, 64, std::vector<cplx>(64 * 64)};
    for (std::size_t a = 0; a < 64; ++a) {
        for (std::size_t b = 0; b < 64; ++b) {
            g.at(a, b) = 0.5 * std::polar(1.0, 1.3 * dt * double(a) + 2.2 * dt * double(b)); // l1 = -1.3, l2 = 2.2
        }
    }
    EXPECT_NEAR(std::abs(component_at(g, -1.3, 2.2) - 0.5), 0.0, 1e-12);
}
