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

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace relphase {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduce an angle into [0, 2pi).
double wrap_angle(double phi);

/// Probability distribution of a phase on [0, 2pi).
class CircularPrior {
   public:
    struct Flat {};
    struct Delta {
        double phi0;
    };
    struct VonMises {
        double mu;
        double kappa;
    };
    struct Grid {
        std::vector<double> points;
        std::vector<double> weights;
    };
    using Kind = std::variant<Flat, Delta, VonMises, Grid>;

    static CircularPrior flat();
    static CircularPrior delta(double phi0);
    static CircularPrior von_mises(double mu, double kappa);
    /// Weights must be non-negative and sum to one within 1e-12.
    static CircularPrior grid(std::vector<double> points, std::vector<double> weights);
    /// Like `grid` but rescales positive weights to unit sum first.
    static CircularPrior grid_normalized(std::vector<double> points, std::vector<double> weights);

    /// Parses `flat`, `delta:<phi0>`, `vonmises:<mu>,<kappa>` or `grid:<path>`,
    /// where the grid file holds `point,weight` CSV rows.
    static CircularPrior parse(std::string_view text);

    const Kind &kind() const { return kind_; }
    bool is_flat() const { return std::holds_alternative<Flat>(kind_); }
    bool is_delta() const { return std::holds_alternative<Delta>(kind_); }
    bool is_von_mises() const { return std::holds_alternative<VonMises>(kind_); }
    bool is_grid() const { return std::holds_alternative<Grid>(kind_); }

    /// Canonical text form (grid priors render as `grid[<n points>]`).
    std::string describe() const;

   private:
    explicit CircularPrior(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

struct Quadrature {
    std::vector<double> points;
    std::vector<double> weights;
};

inline constexpr int kDefaultResolution = 256;

/// Discretize a prior. Flat priors give `resolution` equally weighted uniform
/// points, delta priors one point, von Mises priors the density sampled on the
/// same uniform grid and renormalized, and grid priors are passed through.
Quadrature quadrature(const CircularPrior &prior, int resolution = kDefaultResolution);

}  // namespace relphase
