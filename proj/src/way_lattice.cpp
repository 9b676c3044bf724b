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

#include "relphase/way_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "relphase/error.hpp"

namespace relphase {

namespace {

constexpr double kFactorizedTol = 1e-8;
constexpr double kPriorSumTol = 1e-12;

int dim_for(const LatticeSpace &space, int particles) {
    if (particles == 1) {
        return space.d();
    }
    if (particles == 2) {
        return space.d() * space.d();
    }
    throw ConfigError("lattice states hold one or two particles");
}

// Joint index of (every particle at its site + shift).
int shifted_index(const LatticeSpace &space, int particles, int index, int shift) {
    const int d = space.d();
    if (particles == 1) {
        return space.wrap(static_cast<long long>(index) + shift);
    }
    int x1 = index / d;
    int x2 = index % d;
    return space.wrap(static_cast<long long>(x1) + shift) * d + space.wrap(static_cast<long long>(x2) + shift);
}

int particles_for_dim(const LatticeSpace &space, int dim) {
    if (dim == space.d()) {
        return 1;
    }
    if (dim == space.d() * space.d()) {
        return 2;
    }
    throw ConfigError("dimension does not match a one- or two-particle lattice of size d = " +
                      std::to_string(space.d()));
}

// Index map lattice (x1 * d + x2) -> rel/center (x_r * d + x_a).
std::vector<int> rel_center_permutation(const LatticeSpace &space) {
    const int d = space.d();
    std::vector<int> perm(static_cast<std::size_t>(d) * d);
    for (int x1 = 0; x1 < d; ++x1) {
        for (int x2 = 0; x2 < d; ++x2) {
            int r = space.wrap(static_cast<long long>(x1) - x2);
            int a = space.wrap(static_cast<long long>(x1) + x2);
            perm[x1 * d + x2] = r * d + a;
        }
    }
    return perm;
}

std::vector<int> invert(const std::vector<int> &perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        inv[perm[i]] = static_cast<int>(i);
    }
    return inv;
}

Ket permute(const Ket &v, const std::vector<int> &perm) {
    Ket out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out(perm[i]) = v(i);
    }
    return out;
}

Matrix permute(const Matrix &m, const std::vector<int> &perm) {
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            out(perm[i], perm[j]) = m(i, j);
        }
    }
    return out;
}

void check_norm(const Ket &v, const char *what) {
    if (std::abs(v.squaredNorm() - 1.0) > kTol.norm) {
        throw ConfigError(std::string(what) + ": amplitudes are not normalized");
    }
}

// g_Z = (1/d) sum_k f(2 pi k / d) exp(2 pi i k Z / d)
std::vector<cplx> translation_coefficients(const LatticeSpace &space, const std::function<double(double)> &f) {
    const int d = space.d();
    std::vector<double> fk(d);
    for (int k = 0; k < d; ++k) {
        fk[k] = f(2.0 * std::numbers::pi * k / d);
    }
    std::vector<cplx> g(d);
    for (int z = 0; z < d; ++z) {
        cplx acc = 0.0;
        for (int k = 0; k < d; ++k) {
            // k * z reduced mod d keeps the angle small.
            int kz = static_cast<int>((static_cast<long long>(k) * z) % d);
            acc += fk[k] * std::polar(1.0, 2.0 * std::numbers::pi * kz / d);
        }
        g[z] = acc / static_cast<double>(d);
    }
    return g;
}

}  // namespace

LatticeSpace::LatticeSpace(int d) : d_(d) {
    if (d <= 0 || d % 2 == 0) {
        throw ConfigError("lattice size d must be odd and positive, got " + std::to_string(d));
    }
}

int LatticeSpace::wrap(long long x) const {
    long long r = x % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
}

int LatticeSpace::centered(int x) const {
    int w = wrap(x);
    return w <= (d_ - 1) / 2 ? w : w - d_;
}

LatticeState::LatticeState(LatticeSpace space, int particles, Ket amplitudes)
    : space_(space), particles_(particles), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dim_for(space_, particles_)) {
        throw ConfigError("lattice state has the wrong number of amplitudes");
    }
    check_norm(amplitudes_, "LatticeState");
}

LatticeState LatticeState::site(LatticeSpace space, int x) {
    Ket v = Ket::Zero(space.d());
    v(space.wrap(x)) = 1.0;
    return LatticeState(space, 1, std::move(v));
}

LatticeState LatticeState::sites(LatticeSpace space, int x1, int x2) {
    Ket v = Ket::Zero(space.d() * space.d());
    v(space.wrap(x1) * space.d() + space.wrap(x2)) = 1.0;
    return LatticeState(space, 2, std::move(v));
}

RelCenterState::RelCenterState(LatticeSpace space, Ket amplitudes) : space_(space), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.d() * space_.d()) {
        throw ConfigError("rel/center state has the wrong number of amplitudes");
    }
    check_norm(amplitudes_, "RelCenterState");
}

RelCenterState RelCenterState::product(LatticeSpace space, const Ket &rel, const Ket &center) {
    if (rel.size() != space.d() || center.size() != space.d()) {
        throw ConfigError("rel/center factors must each have d amplitudes");
    }
    return RelCenterState(space, tensor(rel, center));
}

LatticePrior::LatticePrior(std::vector<double> weights) : weights_(std::move(weights)) {
    LatticeSpace check(static_cast<int>(weights_.size()));
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("lattice prior weights must be finite and non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kPriorSumTol) {
        throw ConfigError("lattice prior weights do not sum to 1");
    }
}

LatticePrior LatticePrior::flat(int d) { return LatticePrior(std::vector<double>(d, 1.0 / d)); }

LatticePrior LatticePrior::delta(int d, int shift) {
    LatticeSpace space(d);
    std::vector<double> w(d, 0.0);
    w[space.wrap(shift)] = 1.0;
    return LatticePrior(std::move(w));
}

LatticePrior LatticePrior::parse(std::string_view text, int d) {
    if (text == "flat") {
        return flat(d);
    }
    if (text.starts_with("delta:")) {
        std::string body(text.substr(6));
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(body, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != body.size()) {
            throw ConfigError("lattice delta prior needs an integer shift, got '" + body + "'");
        }
        return delta(d, LatticeSpace(d).wrap(x));
    }
    throw ConfigError("unknown lattice prior '" + std::string(text) + "'");
}

LatticeState displacement(int shift, const LatticeState &state) {
    const auto &space = state.space();
    Ket out(state.dim());
    for (int i = 0; i < state.dim(); ++i) {
        out(shifted_index(space, state.particles(), i, shift)) = state.amplitudes()(i);
    }
    return LatticeState(space, state.particles(), std::move(out));
}

DensityMatrix displacement(int shift, const DensityMatrix &rho, const LatticeSpace &space, int particles) {
    if (rho.dim() != dim_for(space, particles)) {
        throw ConfigError("displacement: density matrix dimension mismatch");
    }
    std::vector<int> perm(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) {
        perm[i] = shifted_index(space, particles, i, shift);
    }
    return DensityMatrix(permute(rho.entries(), perm), rho.basis());
}

Matrix displacement_matrix(const LatticeSpace &space, int shift, int particles) {
    const int n = dim_for(space, particles);
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(shifted_index(space, particles, i, shift), i) = 1.0;
    }
    return m;
}

Matrix momentum_function(const LatticeSpace &space, const std::function<double(double)> &f, int particles) {
    const int n = dim_for(space, particles);
    std::vector<cplx> g = translation_coefficients(space, f);
    Matrix m = Matrix::Zero(n, n);
    for (int z = 0; z < space.d(); ++z) {
        for (int i = 0; i < n; ++i) {
            m(shifted_index(space, particles, i, z), i) = g[z];
        }
    }
    return m;
}

Matrix total_momentum(const LatticeSpace &space, int particles) {
    return momentum_function(space, [](double p) { return p; }, particles);
}

double total_momentum_commutator(const LatticeSpace &space, const Matrix &obs, int particles) {
    const int n = dim_for(space, particles);
    if (obs.rows() != n || obs.cols() != n) {
        throw ConfigError("total_momentum_commutator: dimension mismatch");
    }
    std::vector<cplx> c = translation_coefficients(space, [](double p) { return p; });
    // P(y, x) = c_Z when y = x + Z for every particle, so (M P)(i, x) = sum_Z c_Z M(i, x + Z).
    // P is Hermitian, hence P O = (O^dagger P)^dagger.
    auto times_p = [&](const Matrix &m) {
        Matrix out = Matrix::Zero(n, n);
        for (int z = 0; z < space.d(); ++z) {
            for (int x = 0; x < n; ++x) {
                out.col(x) += c[z] * m.col(shifted_index(space, particles, x, z));
            }
        }
        return out;
    };
    Matrix adj = obs.adjoint();
    return max_abs(times_p(obs) - times_p(adj).adjoint());
}

DensityMatrix displacement_average(const LatticeState &state, const LatticePrior &prior) {
    const auto &space = state.space();
    if (prior.d() != space.d()) {
        throw ConfigError("displacement_average: prior size does not match lattice");
    }
    std::vector<int> support;
    for (int x = 0; x < space.d(); ++x) {
        if (prior.weights()[x] != 0.0) {
            support.push_back(x);
        }
    }
    // rho = V V^dagger with columns sqrt(w_X) D(X)|psi>.
    Matrix v(state.dim(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
        v.col(k) = std::sqrt(prior.weights()[support[k]]) * displacement(support[k], state).amplitudes();
    }
    Matrix rho = v * v.adjoint();
    return DensityMatrix(std::move(rho), Basis::Lattice);
}

RelCenterState to_rel_center(const LatticeState &state) {
    if (state.particles() != 2) {
        throw ConfigError("to_rel_center needs a two-particle state");
    }
    return RelCenterState(state.space(), permute(state.amplitudes(), rel_center_permutation(state.space())));
}

LatticeState to_lattice(const RelCenterState &state) {
    auto inv = invert(rel_center_permutation(state.space()));
    return LatticeState(state.space(), 2, permute(state.amplitudes(), inv));
}

DensityMatrix to_rel_center(const DensityMatrix &rho, const LatticeSpace &space) {
    if (particles_for_dim(space, rho.dim()) != 2) {
        throw ConfigError("to_rel_center needs a two-particle density matrix");
    }
    return DensityMatrix(permute(rho.entries(), rel_center_permutation(space)), Basis::RelCenter);
}

DensityMatrix to_lattice(const DensityMatrix &rho, const LatticeSpace &space) {
    if (particles_for_dim(space, rho.dim()) != 2) {
        throw ConfigError("to_lattice needs a two-particle density matrix");
    }
    return DensityMatrix(permute(rho.entries(), invert(rel_center_permutation(space))), Basis::Lattice);
}

FactorizationCheck factorization_check(const DensityMatrix &rho, const LatticeSpace &space) {
    const int d = space.d();
    if (rho.dim() != d * d) {
        throw ConfigError("factorization_check: expected a d^2-dimensional density matrix");
    }
    DensityMatrix rel = partial_trace(rho, d, d, Keep::A);
    DensityMatrix center = partial_trace(rho, d, d, Keep::B);
    double residual = max_abs(rho.entries() - tensor(rel, center).entries());
    double purity = rel.purity();
    return {residual <= kFactorizedTol, std::move(rel), std::move(center), residual, purity};
}

Matrix sum_gate(const LatticeSpace &space) {
    const int d = space.d();
    const int n = d * d;
    Matrix u = Matrix::Zero(n, n);
    for (int x1 = 0; x1 < d; ++x1) {
        for (int x2 = 0; x2 < d; ++x2) {
            // x_a -> x_a + x_r moves both particles by x_r / 2.
            int r = space.wrap(static_cast<long long>(x1) - x2);
            long long step = static_cast<long long>(r) * space.half();
            u(space.wrap(x1 + step) * d + space.wrap(x2 + step), x1 * d + x2) = 1.0;
        }
    }
    return u;
}

Matrix relative_position(const LatticeSpace &space) {
    const int d = space.d();
    Matrix m = Matrix::Zero(d * d, d * d);
    for (int x1 = 0; x1 < d; ++x1) {
        for (int x2 = 0; x2 < d; ++x2) {
            m(x1 * d + x2, x1 * d + x2) = space.centered(x1 - x2);
        }
    }
    return m;
}

Matrix absolute_position(const LatticeSpace &space, int particle, int particles) {
    const int n = dim_for(space, particles);
    if (particle < 0 || particle >= particles) {
        throw ConfigError("absolute_position: particle index out of range");
    }
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int x = (particles == 1 || particle == 1) ? i % space.d() : i / space.d();
        m(i, i) = space.centered(x);
    }
    return m;
}

InvarianceResult expectation_invariance(const LatticeState &state, const Matrix &obs,
                                        std::span<const LatticePrior> priors) {
    if (hermiticity_residual(obs) > kTol.herm) {
        throw ToleranceError("expectation_invariance: observable is not Hermitian");
    }
    InvarianceResult out{total_momentum_commutator(state.space(), obs, state.particles()), 0.0, {}};
    for (const auto &p : priors) {
        out.expectations.push_back(expectation(obs, displacement_average(state, p)));
    }
    if (!out.expectations.empty()) {
        auto [lo, hi] = std::minmax_element(out.expectations.begin(), out.expectations.end());
        out.deviation = *hi - *lo;
    }
    return out;
}

}  // namespace relphase
