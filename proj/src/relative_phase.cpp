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

#include "relphase/relative_phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "relphase/error.hpp"
#include "relphase/priors.hpp"

namespace relphase {

TwoModeState::TwoModeState(Matrix amplitudes, double tail_mass)
    : amplitudes_(std::move(amplitudes)), tail_mass_(tail_mass) {
    if (amplitudes_.rows() == 0 || amplitudes_.rows() != amplitudes_.cols()) {
        throw ConfigError("two-mode amplitudes must form a non-empty square matrix");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kTol.norm + tail_mass_) {
        throw ConfigError("two-mode amplitudes are not normalized");
    }
}

double TwoModeState::boundary_mass() const {
    const int c = cutoff();
    double mass = amplitudes_.row(c).squaredNorm() + amplitudes_.col(c).squaredNorm();
    return mass - std::norm(amplitudes_(c, c));
}

SpinCoherentParams SpinCoherentParams::from(cplx alpha, cplx beta) {
    if (beta == 0.0) {
        throw ConfigError("spin coherent parameters need beta != 0");
    }
    double a = std::abs(alpha);
    double b = std::abs(beta);
    return {alpha / beta, -2.0 * std::atan2(a, b), wrap_angle(std::arg(beta) - std::arg(alpha)), a * a + b * b};
}

int default_two_mode_cutoff(cplx alpha, cplx beta) { return default_cutoff(std::norm(alpha) + std::norm(beta)); }

int default_rel_cutoff(cplx alpha) {
    double a = std::abs(alpha);
    return static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0));
}

TwoModeState two_mode_coherent(cplx alpha, cplx beta, int cutoff, const Tolerances &tol) {
    FockVector a = coherent_amplitudes(alpha, cutoff, tol);
    FockVector b = coherent_amplitudes(beta, cutoff, tol);
    double tail = 1.0 - (1.0 - a.tail_mass()) * (1.0 - b.tail_mass());
    if (tail > tol.tail) {
        std::ostringstream os;
        os << "two-mode truncation tail " << tail << " exceeds tail tolerance";
        throw TruncationError(os.str(), tail);
    }
    return TwoModeState(a.amplitudes() * b.amplitudes().transpose(), tail);
}

SpinBlockDecomposition to_spin_blocks(const TwoModeState &state) {
    const int c = state.cutoff();
    const Matrix &amp = state.amplitudes();
    SpinBlockDecomposition out{2 * c, {}, {}};
    out.blocks.reserve(2 * c + 1);
    out.block_weights.reserve(2 * c + 1);
    for (int n = 0; n <= 2 * c; ++n) {
        Ket block = Ket::Zero(n + 1);
        for (int k = std::max(0, n - c); k <= std::min(n, c); ++k) {
            block(k) = amp(k, n - k);
        }
        out.block_weights.push_back(block.squaredNorm());
        out.blocks.push_back(std::move(block));
    }
    return out;
}

Ket spin_coherent_block(int n, cplx xi) {
    if (n < 0) {
        throw ConfigError("spin_coherent_block: N must be non-negative");
    }
    Ket v = Ket::Zero(n + 1);
    if (xi == 0.0) {
        v(0) = 1.0;
        return v;
    }
    const double r2 = std::norm(xi);
    const double log_r = std::log(std::abs(xi));
    const double phase = std::arg(xi);
    const double log_norm = -0.5 * n * std::log1p(r2);
    const double lg_n = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
        double log_binom = lg_n - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        v(k) = std::polar(std::exp(0.5 * log_binom + log_norm + k * log_r), k * phase);
    }
    return v;
}

double verify_block_identity(cplx alpha, cplx beta, int cutoff) {
    if (beta == 0.0) {
        throw ConfigError("verify_block_identity needs beta != 0");
    }
    TwoModeState state = two_mode_coherent(alpha, beta, cutoff);
    SpinBlockDecomposition blocks = to_spin_blocks(state);
    const cplx xi = alpha / beta;
    const double mean = std::norm(alpha) + std::norm(beta);
    const double beta_phase = std::arg(beta);
    double worst = 0.0;
    for (int n = 0; n <= blocks.max_n; ++n) {
        double log_mag = -0.5 * mean + 0.5 * n * std::log(mean) - 0.5 * std::lgamma(n + 1.0);
        cplx prefactor = std::polar(std::exp(log_mag), n * beta_phase);
        Ket spin = spin_coherent_block(n, xi);
        // Blocks above the cutoff only hold the entries inside the truncated space.
        for (int k = std::max(0, n - cutoff); k <= std::min(n, cutoff); ++k) {
            worst = std::max(worst, std::abs(blocks.blocks[n](k) - prefactor * spin(k)));
        }
    }
    return worst;
}

ContractedBlock contract_block(int n, const Ket &block, int rel_cutoff) {
    if (block.size() != n + 1) {
        throw ConfigError("contract_block: block N must have N + 1 entries");
    }
    if (rel_cutoff < 0) {
        throw ConfigError("contract_block: rel_cutoff must be non-negative");
    }
    Ket out = Ket::Zero(rel_cutoff + 1);
    const int kept = std::min(n, rel_cutoff) + 1;
    out.head(kept) = block.head(kept);
    double loss = block.tail(n + 1 - kept).squaredNorm();
    return {FockVector(std::move(out), loss), loss};
}

RelativePhaseState relative_phase_state(cplx alpha, cplx beta, int cutoff, int rel_cutoff, const Tolerances &tol) {
    if (beta == 0.0) {
        throw ConfigError("relative_phase_state needs |beta| > 0");
    }
    TwoModeState state = two_mode_coherent(alpha, beta, cutoff, tol);
    SpinBlockDecomposition blocks = to_spin_blocks(state);

    const int dim = rel_cutoff + 1;
    Matrix rho = Matrix::Zero(dim, dim);
    double loss = 0.0;
    for (int n = 0; n <= blocks.max_n; ++n) {
        if (blocks.block_weights[n] == 0.0) {
            continue;
        }
        ContractedBlock cb = contract_block(n, blocks.blocks[n], rel_cutoff);
        loss += cb.embedding_loss;
        const Ket &v = cb.state.amplitudes();
        rho.noalias() += v * v.adjoint();
    }
    if (loss > tol.tail) {
        std::ostringstream os;
        os << "rel_cutoff " << rel_cutoff << " drops probability " << loss << " from the spin blocks";
        throw TruncationError(os.str(), loss);
    }
    return {DensityMatrix(std::move(rho), Basis::RelativeFock, tol),
            std::move(blocks.block_weights),
            state.tail_mass(),
            loss,
            cutoff,
            rel_cutoff};
}

FactorizationReport factorization_fidelity(cplx alpha, cplx beta, int cutoff, int rel_cutoff, const Tolerances &tol) {
    RelativePhaseState rel = relative_phase_state(alpha, beta, cutoff, rel_cutoff, tol);
    cplx eta = alpha / beta * std::abs(beta);
    FockVector target = coherent_amplitudes(eta, rel_cutoff, tol);
    double ratio = alpha == 0.0 ? std::numeric_limits<double>::infinity() : std::norm(beta) / std::norm(alpha);
    return {alpha,
            beta,
            fidelity(rel.rho, target.amplitudes()),
            rel.rho.purity(),
            eta,
            ratio,
            cutoff,
            rel_cutoff,
            rel.truncation_tail,
            rel.embedding_loss,
            std::move(rel.total_number_weights)};
}

}  // namespace relphase
