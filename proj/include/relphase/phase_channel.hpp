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

// Phase-averaging channel on a single bosonic mode,
//
//     rho -> sum_k w_k U(phi_k) rho U(phi_k)^dagger,   U(phi) = exp(-i phi n),
//
// for an arbitrary circular prior, and checks that expectations of
// number-conserving observables do not depend on which prior was chosen.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "relphase/fock.hpp"
#include "relphase/priors.hpp"

namespace relphase {

struct PhaseAverageReport {
    std::string input_descriptor;
    CircularPrior prior;
    DensityMatrix output;
    /// max |rho_nm| over n != m
    double offdiag_norm;
    double purity;
};

/// Averages `state` (Fock basis) over the prior. Flat priors are applied
/// exactly by zeroing every off-diagonal element; delta priors are a single
/// unitary conjugation; von Mises priors need resolution >= 2 * dim, otherwise
/// ConfigError. Grid priors ignore `resolution`.
PhaseAverageReport phase_average(const DensityMatrix &state, const CircularPrior &prior,
                                 int resolution = kDefaultResolution, std::string input_descriptor = {});

/// diag(exp(-i phi n)), n = 0..dim-1
Matrix phase_rotation(int dim, double phi);

struct PhaseInsensitivity {
    bool insensitive;
    /// max |[obs, n]|_ij
    double residual;
};

PhaseInsensitivity is_phase_insensitive(const Matrix &obs);

/// Max pairwise difference of Tr[obs phase_average(state, p)] over the priors.
double prior_independence_check(const DensityMatrix &state, const Matrix &obs, std::span<const CircularPrior> priors,
                                 int resolution = kDefaultResolution);

/// Expectations behind `prior_independence_check`, one per prior, in order.
std::vector<double> prior_expectations(const DensityMatrix &state, const Matrix &obs,
                                       std::span<const CircularPrior> priors, int resolution = kDefaultResolution);

}  // namespace relphase
