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

// Particles on the cyclic lattice Z_d with conserved total momentum.
//
// Global translations D(X)|x1, x2> = |x1 + X, x2 + X> are generated by the
// total momentum P (D(X) = exp(-i X P)). Relative and center labels
// x_r = x1 - x2, x_a = x1 + x2 (mod d) form a second product basis; for odd d
// the relabeling is a bijection. In that basis D(X) acts only on x_a, so the
// relative factor of a product state survives any average over translations.

#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "relphase/fock.hpp"

namespace relphase {

class LatticeSpace {
   public:
    /// d must be odd and positive.
    explicit LatticeSpace(int d);

    int d() const { return d_; }
    /// x mod d in [0, d)
    int wrap(long long x) const;
    /// Label in {-(d-1)/2, ..., (d-1)/2} for site x.
    int centered(int x) const;
    /// Multiplicative inverse of 2 mod d.
    int half() const { return (d_ + 1) / 2; }

    friend bool operator==(const LatticeSpace &, const LatticeSpace &) = default;

   private:
    int d_;
};

/// One or two particles on the lattice. Two-particle amplitudes are indexed
/// x1 * d + x2.
class LatticeState {
   public:
    LatticeState(LatticeSpace space, int particles, Ket amplitudes);

    static LatticeState site(LatticeSpace space, int x);
    static LatticeState sites(LatticeSpace space, int x1, int x2);

    const LatticeSpace &space() const { return space_; }
    int particles() const { return particles_; }
    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Ket &amplitudes() const { return amplitudes_; }

   private:
    LatticeSpace space_;
    int particles_;
    Ket amplitudes_;
};

/// Two-particle amplitudes over |x_r, x_a>, indexed x_r * d + x_a.
class RelCenterState {
   public:
    RelCenterState(LatticeSpace space, Ket amplitudes);

    /// |psi_r> (x) |psi_a>
    static RelCenterState product(LatticeSpace space, const Ket &rel, const Ket &center);

    const LatticeSpace &space() const { return space_; }
    const Ket &amplitudes() const { return amplitudes_; }

   private:
    LatticeSpace space_;
    Ket amplitudes_;
};

/// Probability weights over the d possible translations.
class LatticePrior {
   public:
    explicit LatticePrior(std::vector<double> weights);

    static LatticePrior flat(int d);
    static LatticePrior delta(int d, int shift);
    /// `flat` or `delta:<X>`.
    static LatticePrior parse(std::string_view text, int d);

    const std::vector<double> &weights() const { return weights_; }
    int d() const { return static_cast<int>(weights_.size()); }

   private:
    std::vector<double> weights_;
};

LatticeState displacement(int shift, const LatticeState &state);
/// D(X) rho D(X)^dagger. `particles` is 1 or 2 and must match dim(rho).
DensityMatrix displacement(int shift, const DensityMatrix &rho, const LatticeSpace &space, int particles = 2);
Matrix displacement_matrix(const LatticeSpace &space, int shift, int particles = 2);

/// sum_Z g_Z D(Z) where g is chosen so that the result equals f(P): diagonal
/// in the momentum basis with eigenvalue f(2 pi k / d), k = total momentum mod d.
Matrix momentum_function(const LatticeSpace &space, const std::function<double(double)> &f, int particles = 2);

/// Generator P of global translations, eigenvalues 2 pi k / d, k = 0..d-1.
Matrix total_momentum(const LatticeSpace &space, int particles = 2);

/// max |[obs, P]|_ij, computed from the translation structure of P.
double total_momentum_commutator(const LatticeSpace &space, const Matrix &obs, int particles = 2);

/// sum_X P(X) D(X) |psi><psi| D(X)^dagger in the lattice basis.
DensityMatrix displacement_average(const LatticeState &state, const LatticePrior &prior);

RelCenterState to_rel_center(const LatticeState &state);
LatticeState to_lattice(const RelCenterState &state);
DensityMatrix to_rel_center(const DensityMatrix &rho, const LatticeSpace &space);
DensityMatrix to_lattice(const DensityMatrix &rho, const LatticeSpace &space);

struct FactorizationCheck {
    bool is_factorized;
    DensityMatrix rel_factor;
    DensityMatrix center_factor;
    /// max |rho - rel (x) center|_ij
    double residual;
    double rel_purity;
};

/// rho must be d^2-dimensional and expressed in rel/center labels.
FactorizationCheck factorization_check(const DensityMatrix &rho, const LatticeSpace &space);

/// Controlled translation |x_r, x_a> -> |x_r, x_a + x_r>, written in the
/// lattice basis. Equivalent to translating both particles by x_r / 2.
Matrix sum_gate(const LatticeSpace &space);

/// diag of the centered relative coordinate (x1 - x2) on the two-particle lattice.
Matrix relative_position(const LatticeSpace &space);
/// diag of the centered coordinate of one particle (0 or 1).
Matrix absolute_position(const LatticeSpace &space, int particle, int particles = 2);

struct InvarianceResult {
    double commutator_norm;
    double deviation;
    std::vector<double> expectations;
};

/// Expectation of obs after displacement averaging under each prior; reports
/// the spread and ||[obs, P]||_max.
InvarianceResult expectation_invariance(const LatticeState &state, const Matrix &obs,
                                        std::span<const LatticePrior> priors);

}  // namespace relphase
