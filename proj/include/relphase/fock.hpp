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

// Truncated bosonic Hilbert-space algebra: kets, density matrices, Kronecker
// composition, partial traces and state metrics.
//
// Joint-index convention, fixed everywhere in the project: for a composite
// space A (x) B the basis state |i>_A |j>_B sits at index i * dim(B) + j
// (row-major in the first factor).

#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "relphase/tolerances.hpp"

namespace relphase {

using cplx = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Which basis a density matrix is expressed in.
enum class Basis {
    Fock,          ///< photon-number basis |n>, n = 0..dim-1
    Lattice,       ///< lattice positions |x1, x2> (or |x> for one particle)
    RelCenter,     ///< lattice relative/center labels |x_r, x_a>
    RelativeFock,  ///< contracted relative-phase Fock space
    Generic,
};

std::string_view basis_name(Basis b);

/// Amplitudes over |0>..|cutoff> for a single bosonic mode. Carries the
/// probability mass the constructing operation left outside the cutoff.
class FockVector {
   public:
    explicit FockVector(Ket amplitudes, double tail_mass = 0.0);

    static FockVector number_state(int n, int cutoff);

    int cutoff() const { return static_cast<int>(amplitudes_.size()) - 1; }
    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Ket &amplitudes() const { return amplitudes_; }
    cplx operator[](int n) const { return amplitudes_(n); }
    double norm_squared() const { return amplitudes_.squaredNorm(); }
    double tail_mass() const { return tail_mass_; }

   private:
    Ket amplitudes_;
    double tail_mass_;
};

/// Hermitian, positive-semidefinite, unit-trace matrix.
///
/// The constructor checks hermiticity and trace and stores the Hermitian part.
/// Positivity is guaranteed by construction for every matrix built inside the
/// library (convex mixtures of projectors, channel outputs); call
/// `min_eigenvalue` / `check_psd` to verify it on arbitrary input.
class DensityMatrix {
   public:
    explicit DensityMatrix(Matrix entries, Basis basis = Basis::Fock, const Tolerances &tol = kTol);

    /// |psi><psi|. psi must have unit norm within the trace tolerance.
    static DensityMatrix pure(const Ket &psi, Basis basis = Basis::Fock, const Tolerances &tol = kTol);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix &entries() const { return entries_; }
    cplx operator()(int i, int j) const { return entries_(i, j); }
    Basis basis() const { return basis_; }

    /// The generating ket when this matrix was built by `pure`.
    const std::optional<Ket> &ket() const { return ket_; }

    double trace() const { return entries_.trace().real(); }
    double purity() const;
    double min_eigenvalue() const;
    /// Throws ToleranceError when the smallest eigenvalue is below -tol.psd.
    void check_psd(const Tolerances &tol = kTol) const;

    DensityMatrix with_basis(Basis b) const;

   private:
    Matrix entries_;
    Basis basis_;
    std::optional<Ket> ket_;
};

/// Default per-mode cutoff for a Poisson photon distribution of the given mean.
int default_cutoff(double mean);

/// Probability mass of Poisson(mean) strictly above `cutoff`, summed directly.
double poisson_tail(double mean, int cutoff);

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n = 0..cutoff, not renormalized.
/// Throws TruncationError when the discarded Poisson tail exceeds tol.tail.
FockVector coherent_amplitudes(cplx alpha, int cutoff, const Tolerances &tol = kTol);

DensityMatrix number_projector(int n, int dim);

Ket tensor(const Ket &a, const Ket &b, const Tolerances &tol = kTol);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b, const Tolerances &tol = kTol);

enum class Keep { A, B };

DensityMatrix partial_trace(const DensityMatrix &rho, int dim_a, int dim_b, Keep keep);

/// Uhlmann fidelity in the squared convention: F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// which reduces to |<psi|phi>|^2 on pure states and to <psi|rho|psi> when one
/// side is pure. Eigenvalues in [-psd_tol, 0) are clipped to zero; anything
/// more negative throws ToleranceError.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, const Tolerances &tol = kTol);
double fidelity(const DensityMatrix &rho, const Ket &psi);
/// |<a|b>|^2
double fidelity(const Ket &a, const Ket &b);

/// Tr[obs rho] for Hermitian obs.
double expectation(const Matrix &obs, const DensityMatrix &rho, const Tolerances &tol = kTol);

/// Von Neumann entropy (base 2) of either factor of a bipartite pure state,
/// from its Schmidt coefficients.
double entanglement_entropy_bits(const Ket &psi, int dim_a, int dim_b);

/// max_ij |A - A^dagger|_ij
double hermiticity_residual(const Matrix &a);
/// max_ij |A_ij|
double max_abs(const Matrix &a);

Matrix number_operator(int dim);
Matrix annihilation_operator(int dim);
/// (a + a^dagger) / sqrt(2) on the truncated space.
Matrix position_quadrature(int dim);

}  // namespace relphase
