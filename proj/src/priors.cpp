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

#include "relphase/priors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "relphase/error.hpp"

namespace relphase {

namespace {

constexpr double kWeightSumTol = 1e-12;

double parse_double(std::string_view s, std::string_view what) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception &) {
        throw ConfigError("cannot parse " + std::string(what) + " from '" + str + "'");
    }
    while (used < str.size() && std::isspace(static_cast<unsigned char>(str[used]))) {
        ++used;
    }
    if (used != str.size() || !std::isfinite(v)) {
        throw ConfigError("cannot parse " + std::string(what) + " from '" + str + "'");
    }
    return v;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CircularPrior load_grid_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open prior grid file '" + path + "'");
    }
    std::vector<double> points, weights;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("prior grid row without comma: '" + line + "'");
        }
        try {
            double p = parse_double(std::string_view(line).substr(0, comma), "grid point");
            double w = parse_double(std::string_view(line).substr(comma + 1), "grid weight");
            points.push_back(p);
            weights.push_back(w);
        } catch (const ConfigError &) {
            if (!first) {
                throw;
            }
            // Header row.
        }
        first = false;
    }
    return CircularPrior::grid_normalized(std::move(points), std::move(weights));
}

}  // namespace

double wrap_angle(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

CircularPrior CircularPrior::flat() { return CircularPrior(Flat{}); }

CircularPrior CircularPrior::delta(double phi0) {
    if (!std::isfinite(phi0)) {
        throw ConfigError("delta prior angle must be finite");
    }
    return CircularPrior(Delta{wrap_angle(phi0)});
}

CircularPrior CircularPrior::von_mises(double mu, double kappa) {
    if (!std::isfinite(mu) || !std::isfinite(kappa)) {
        throw ConfigError("von Mises parameters must be finite");
    }
    if (kappa < 0) {
        throw ConfigError("von Mises concentration kappa must be >= 0");
    }
    return CircularPrior(VonMises{wrap_angle(mu), kappa});
}

CircularPrior CircularPrior::grid(std::vector<double> points, std::vector<double> weights) {
    if (points.size() != weights.size()) {
        throw ConfigError("grid prior: points and weights differ in length");
    }
    if (points.empty()) {
        throw ConfigError("grid prior: no points");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("grid prior: weights must be finite and non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw ConfigError("grid prior: weights sum to " + fmt17(sum) + ", not 1");
    }
    for (double &p : points) {
        if (!std::isfinite(p)) {
            throw ConfigError("grid prior: points must be finite");
        }
        p = wrap_angle(p);
    }
    return CircularPrior(Grid{std::move(points), std::move(weights)});
}

CircularPrior CircularPrior::grid_normalized(std::vector<double> points, std::vector<double> weights) {
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(sum > 0.0)) {
        throw ConfigError("grid prior: weights must have positive sum");
    }
    for (double &w : weights) {
        w /= sum;
    }
    return grid(std::move(points), std::move(weights));
}

CircularPrior CircularPrior::parse(std::string_view text) {
    if (text == "flat") {
        return flat();
    }
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("unknown prior '" + std::string(text) + "'");
    }
    auto head = text.substr(0, colon);
    auto body = text.substr(colon + 1);
    if (head == "delta") {
        return delta(parse_double(body, "delta angle"));
    }
    if (head == "vonmises") {
        auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError("von Mises prior needs 'vonmises:<mu>,<kappa>'");
        }
        return von_mises(parse_double(body.substr(0, comma), "von Mises mu"),
                         parse_double(body.substr(comma + 1), "von Mises kappa"));
    }
    if (head == "grid") {
        return load_grid_csv(std::string(body));
    }
    throw ConfigError("unknown prior '" + std::string(text) + "'");
}

std::string CircularPrior::describe() const {
    struct Visitor {
        std::string operator()(const Flat &) const { return "flat"; }
        std::string operator()(const Delta &d) const { return "delta:" + fmt17(d.phi0); }
        std::string operator()(const VonMises &v) const { return "vonmises:" + fmt17(v.mu) + "," + fmt17(v.kappa); }
        std::string operator()(const Grid &g) const { return "grid[" + std::to_string(g.points.size()) + "]"; }
    };
    return std::visit(Visitor{}, kind_);
}

Quadrature quadrature(const CircularPrior &prior, int resolution) {
    if (resolution < 1) {
        throw ConfigError("quadrature resolution must be >= 1");
    }
    auto uniform_points = [resolution] {
        std::vector<double> pts(resolution);
        for (int k = 0; k < resolution; ++k) {
            pts[k] = kTwoPi * k / resolution;
        }
        return pts;
    };

    struct Visitor {
        int resolution;
        decltype(uniform_points) &uniform;

        Quadrature operator()(const CircularPrior::Flat &) const {
            return {uniform(), std::vector<double>(resolution, 1.0 / resolution)};
        }
        Quadrature operator()(const CircularPrior::Delta &d) const { return {{d.phi0}, {1.0}}; }
        Quadrature operator()(const CircularPrior::VonMises &v) const {
            // Periodic trapezoid rule: equal spacing, density values as weights.
            // exp(kappa (cos - 1)) keeps the peak at 1 for any kappa.
            Quadrature q{uniform(), std::vector<double>(resolution)};
            double sum = 0.0;
            for (int k = 0; k < resolution; ++k) {
                q.weights[k] = std::exp(v.kappa * (std::cos(q.points[k] - v.mu) - 1.0));
                sum += q.weights[k];
            }
            for (double &w : q.weights) {
                w /= sum;
            }
            return q;
        }
        Quadrature operator()(const CircularPrior::Grid &g) const { return {g.points, g.weights}; }
    };
    return std::visit(Visitor{resolution, uniform_points}, prior.kind());
}

}  // namespace relphase
