// Copyright 2026 The relphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "gtest/gtest.h"
#include "relphase/error.hpp"
#include "relphase/priors.hpp"

using namespace relphase;

TEST(priors, wrap_angle) {
    EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(wrap_angle(7.0), 7.0 - kTwoPi, 1e-15);
    EXPECT_EQ(wrap_angle(0.0), 0.0);
    EXPECT_LT(wrap_angle(-1e-18), kTwoPi);
}

TEST(priors, parse) {
    EXPECT_TRUE(CircularPrior::parse("flat").is_flat());
    CircularPrior d = CircularPrior::parse("delta:0.25");
    ASSERT_TRUE(d.is_delta());
    EXPECT_EQ(std::get<CircularPrior::Delta>(d.kind()).phi0, 0.25);
    CircularPrior v = CircularPrior::parse("vonmises:1.5,4");
    ASSERT_TRUE(v.is_von_mises());
    EXPECT_EQ(std::get<CircularPrior::VonMises>(v.kind()).kappa, 4.0);
    EXPECT_EQ(v.describe(), "vonmises:1.5,4");
}

TEST(priors, parse_rejects_bad_specs) {
    EXPECT_THROW(CircularPrior::parse("uniform"), ConfigError);
    EXPECT_THROW(CircularPrior::parse("delta:"), ConfigError);
    EXPECT_THROW(CircularPrior::parse("delta:abc"), ConfigError);
    EXPECT_THROW(CircularPrior::parse("vonmises:1"), ConfigError);
    EXPECT_THROW(CircularPrior::parse("vonmises:0,-1"), ConfigError);
    EXPECT_THROW(CircularPrior::parse("grid:/nonexistent/prior.csv"), ConfigError);
}

TEST(priors, grid_weights_must_sum_to_one) {
    EXPECT_THROW(CircularPrior::grid({0.0, 1.0}, {0.5, 0.6}), ConfigError);
    EXPECT_THROW(CircularPrior::grid({0.0, 1.0}, {1.5, -0.5}), ConfigError);
    EXPECT_THROW(CircularPrior::grid({0.0}, {0.5, 0.5}), ConfigError);
    EXPECT_NO_THROW(CircularPrior::grid({0.0, 1.0}, {0.25, 0.75}));
    CircularPrior g = CircularPrior::grid_normalized({0.0, 1.0}, {1.0, 3.0});
    EXPECT_EQ(std::get<CircularPrior::Grid>(g.kind()).weights[1], 0.75);
}

TEST(priors, grid_csv) {
    auto path = std::filesystem::temp_directory_path() / "relphase_priors_test_grid.csv";
    {
        std::ofstream f(path);
        f << "# two-point prior\nphi,weight\n0.0,1\n3.0,3\n";
    }
    CircularPrior g = CircularPrior::parse("grid:" + path.string());
    std::filesystem::remove(path);
    ASSERT_TRUE(g.is_grid());
    const auto &grid = std::get<CircularPrior::Grid>(g.kind());
    ASSERT_EQ(grid.points.size(), 2u);
    EXPECT_EQ(grid.points[1], 3.0);
    EXPECT_EQ(grid.weights[0], 0.25);
    EXPECT_EQ(g.describe(), "grid[2]");
}

TEST(priors, quadrature_weights_are_normalized) {
    for (const auto &p : {CircularPrior::flat(), CircularPrior::delta(2.0), CircularPrior::von_mises(1.0, 30.0)}) {
        Quadrature q = quadrature(p, 64);
        ASSERT_EQ(q.points.size(), q.weights.size());
        EXPECT_NEAR(std::accumulate(q.weights.begin(), q.weights.end(), 0.0), 1.0, 1e-14);
    }
    EXPECT_EQ(quadrature(CircularPrior::delta(2.0)).points.size(), 1u);
    EXPECT_THROW(quadrature(CircularPrior::flat(), 0), ConfigError);
}

TEST(priors, von_mises_zero_kappa_is_flat) {
    Quadrature v = quadrature(CircularPrior::von_mises(0.3, 0.0), 32);
    Quadrature f = quadrature(CircularPrior::flat(), 32);
    for (int k = 0; k < 32; ++k) {
        EXPECT_NEAR(v.weights[k], f.weights[k], 1e-16);
        EXPECT_EQ(v.points[k], f.points[k]);
    }
}

TEST(priors, von_mises_first_moment) {
    // E[e^{i phi}] = I1(kappa) / I0(kappa) e^{i mu}.
    double kappa = 2.0;
    double mu = 0.8;
    Quadrature q = quadrature(CircularPrior::von_mises(mu, kappa), 256);
    std::complex<double> m1 = 0.0;
    for (std::size_t k = 0; k < q.points.size(); ++k) {
        m1 += q.weights[k] * std::polar(1.0, q.points[k]);
    }
    double ratio = std::cyl_bessel_i(1.0, kappa) / std::cyl_bessel_i(0.0, kappa);
    EXPECT_NEAR(std::abs(m1), ratio, 1e-13);
    EXPECT_NEAR(std::arg(m1), mu, 1e-13);
}

TEST(priors, small_quadratures) {
    Quadrature f = quadrature(CircularPrior::flat(), 4);
    ASSERT_EQ(f.points.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(f.points[k], k * kTwoPi / 4, 1e-15);
        EXPECT_EQ(f.weights[k], 0.25);
    }
    Quadrature d = quadrature(CircularPrior::delta(0.7), 17);
    EXPECT_EQ(d.points, std::vector<double>{0.7});
    EXPECT_EQ(d.weights, std::vector<double>{1.0});
    for (double w : quadrature(CircularPrior::von_mises(0.0, 0.0), 64).weights) {
        EXPECT_NEAR(w, 1.0 / 64, 1e-12);
    }
}
