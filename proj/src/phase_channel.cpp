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

#include "relphase/phase_channel.hpp"

#include <algorithm>
#include <cmath>

#include "relphase/error.hpp"

namespace relphase {

namespace {

constexpr double kCommuteTol = 1e-10;

double offdiag_max(const Matrix &m) {
    double out = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) {
                out = std::max(out, std::abs(m(i, j)));
            }
        }
    }
    return out;
}

// c(D) = sum_k w_k exp(-i phi_k D) for D = -(dim-1)..(dim-1), stored at D + dim - 1.
std::vector<cplx> characteristic(const Quadrature &q, int dim) {
    std::vector<cplx> c(2 * dim - 1, 0.0);
    for (int d = -(dim - 1); d <= dim - 1; ++d) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < q.points.size(); ++k) {
            acc += q.weights[k] * std::polar(1.0, -q.points[k] * d);
        }
        c[d + dim - 1] = acc;
    }
    return c;
}

}  // namespace

Matrix phase_rotation(int dim, double phi) {
    Matrix u = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        u(n, n) = std::polar(1.0, -phi * n);
    }
    return u;
}

PhaseAverageReport phase_average(const DensityMatrix &state, const CircularPrior &prior, int resolution,
                                 std::string input_descriptor) {
    if (state.basis() != Basis::Fock) {
        throw ConfigError("phase_average: state must be in the photon-number basis");
    }
    const int dim = state.dim();
    const Matrix &rho = state.entries();

    auto finish = [&](DensityMatrix out) {
        double off = offdiag_max(out.entries());
        double pur = out.purity();
        return PhaseAverageReport{std::move(input_descriptor), prior, std::move(out), off, pur};
    };

    if (prior.is_flat()) {
        Matrix out = Matrix::Zero(dim, dim);
        out.diagonal() = rho.diagonal();
        return finish(DensityMatrix(std::move(out), Basis::Fock));
    }
    if (const auto *d = std::get_if<CircularPrior::Delta>(&prior.kind())) {
        Matrix u = phase_rotation(dim, d->phi0);
        if (state.ket()) {
            return finish(DensityMatrix::pure(u * *state.ket(), Basis::Fock));
        }
        return finish(DensityMatrix(u * rho * u.adjoint(), Basis::Fock));
    }
    if (prior.is_von_mises() && resolution < 2 * dim) {
        throw ConfigError("phase_average: resolution " + std::to_string(resolution) + " is below 2 * dim = " +
                          std::to_string(2 * dim) + " for a smooth prior");
    }

    Quadrature q = quadrature(prior, resolution);
    std::vector<cplx> c = characteristic(q, dim);
    Matrix out(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            out(n, m) = rho(n, m) * c[n - m + dim - 1];
        }
    }
    return finish(DensityMatrix(std::move(out), Basis::Fock));
}

PhaseInsensitivity is_phase_insensitive(const Matrix &obs) {
    if (hermiticity_residual(obs) > kTol.herm) {
        throw ToleranceError("is_phase_insensitive: observable is not Hermitian");
    }
    // [O, n]_ij = O_ij (j - i)
    double residual = 0.0;
    for (Eigen::Index i = 0; i < obs.rows(); ++i) {
        for (Eigen::Index j = 0; j < obs.cols(); ++j) {
            residual = std::max(residual, std::abs(obs(i, j)) * std::abs(static_cast<double>(j - i)));
        }
    }
    return {residual <= kCommuteTol, residual};
}

std::vector<double> prior_expectations(const DensityMatrix &state, const Matrix &obs,
                                       std::span<const CircularPrior> priors, int resolution) {
    std::vector<double> out;
    out.reserve(priors.size());
    for (const auto &p : priors) {
        out.push_back(expectation(obs, phase_average(state, p, resolution).output));
    }
    return out;
}

double prior_independence_check(const DensityMatrix &state, const Matrix &obs, std::span<const CircularPrior> priors,
                                int resolution) {
    std::vector<double> e = prior_expectations(state, obs, priors, resolution);
    if (e.empty()) {
        return 0.0;
    }
    auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    return *hi - *lo;
}

}  // namespace relphase
