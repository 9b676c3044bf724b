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

// Two-mode coherent states split by total photon number.
//
// |alpha, beta> restricted to N = n1 + n2 photons is, exactly,
//
//     e^{-<N>/2} (sqrt(<N>) beta/|beta|)^N / sqrt(N!)  |N, xi>,   xi = alpha / beta,
//
// where |N, xi> is the spin-N/2 coherent state with amplitude
// sqrt(C(N, k)) (1 + |xi|^2)^{-N/2} xi^k on the k = n1 component. For
// |beta|^2 >> |alpha|^2 each |N, xi> read as a single-mode Fock vector in k is
// close to the oscillator coherent state with amplitude xi sqrt(N) ~ alpha |beta| / beta,
// so dropping coherences between different N leaves an almost pure
// relative-phase coherent state.

#pragma once

#include <vector>

#include "relphase/fock.hpp"

namespace relphase {

/// Amplitudes c(n1, n2) over two truncated modes with a common cutoff.
class TwoModeState {
   public:
    explicit TwoModeState(Matrix amplitudes, double tail_mass = 0.0);

    int cutoff() const { return static_cast<int>(amplitudes_.rows()) - 1; }
    const Matrix &amplitudes() const { return amplitudes_; }
    double norm_squared() const { return amplitudes_.squaredNorm(); }
    /// Probability on the n1 = cutoff row and n2 = cutoff column.
    double boundary_mass() const;
    double tail_mass() const { return tail_mass_; }

   private:
    Matrix amplitudes_;
    double tail_mass_;
};

/// Blocks of fixed N = n1 + n2; block N has N + 1 entries indexed by k = n1.
/// Blocks above the per-mode cutoff are incomplete (entries outside the
/// truncated space are zero).
struct SpinBlockDecomposition {
    int max_n;
    std::vector<Ket> blocks;
    /// squared norm of each block
    std::vector<double> block_weights;
};

struct SpinCoherentParams {
    cplx xi;
    /// |alpha| / sqrt(<N>) = -sin(theta / 2), |beta| / sqrt(<N>) = cos(theta / 2)
    double theta;
    /// phi_alpha - phi_beta for amplitudes written |alpha| e^{-i phi_alpha}; equals arg(beta) - arg(alpha).
    double phi_r;
    double mean_n;

    static SpinCoherentParams from(cplx alpha, cplx beta);
};

/// Per-mode cutoff ceil(m + 8 sqrt(m) + 10) with m = |alpha|^2 + |beta|^2.
int default_two_mode_cutoff(cplx alpha, cplx beta);
/// ceil(|alpha|^2 + 8 |alpha| + 10)
int default_rel_cutoff(cplx alpha);

TwoModeState two_mode_coherent(cplx alpha, cplx beta, int cutoff, const Tolerances &tol = kTol);

SpinBlockDecomposition to_spin_blocks(const TwoModeState &state);

/// Spin-N/2 coherent state, entry k = sqrt(C(N, k)) (1 + |xi|^2)^{-N/2} xi^k.
/// Binomials are evaluated in log space.
Ket spin_coherent_block(int n, cplx xi);

/// Max elementwise difference between the blocks of two_mode_coherent(alpha, beta)
/// and the prefactor-weighted spin coherent states with xi = alpha / beta.
double verify_block_identity(cplx alpha, cplx beta, int cutoff);

struct ContractedBlock {
    FockVector state;
    /// squared norm of entries k > rel_cutoff that did not fit
    double embedding_loss;
};

/// Reads block entry k as the amplitude of relative Fock state |k>.
ContractedBlock contract_block(int n, const Ket &block, int rel_cutoff);

struct RelativePhaseState {
    DensityMatrix rho;
    /// p_N, the total-photon-number distribution
    std::vector<double> total_number_weights;
    double truncation_tail;
    double embedding_loss;
    int cutoff;
    int rel_cutoff;
};

/// Block-diagonal part of |alpha, beta><alpha, beta| (all coherences between
/// different N dropped), with each block contracted into the relative Fock
/// space and the results summed. Throws TruncationError when blocks lose more
/// than tol.tail to the rel_cutoff embedding.
RelativePhaseState relative_phase_state(cplx alpha, cplx beta, int cutoff, int rel_cutoff,
                                        const Tolerances &tol = kTol);

struct FactorizationReport {
    cplx alpha;
    cplx beta;
    double fidelity_to_target;
    double rel_state_purity;
    /// alpha |beta| / beta
    cplx target_amplitude;
    /// |beta|^2 / |alpha|^2 (infinite for alpha = 0)
    double condition_ratio;
    int cutoff;
    int rel_cutoff;
    double truncation_tail;
    double embedding_loss;
    std::vector<double> total_number_weights;
};

FactorizationReport factorization_fidelity(cplx alpha, cplx beta, int cutoff, int rel_cutoff,
                                           const Tolerances &tol = kTol);

}  // namespace relphase
