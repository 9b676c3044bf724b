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

#include "relphase/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "relphase/fock.hpp"
#include "relphase/phase_channel.hpp"
#include "relphase/priors.hpp"
#include "relphase/relative_phase.hpp"
#include "relphase/way_lattice.hpp"

namespace relphase {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed;
    double measured;
    std::string threshold;
    std::string detail;
};

CriterionResult timed(int id, std::string name, const std::function<Outcome()> &body, double max_seconds = 0.0) {
    auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::nan(""), "", std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (max_seconds > 0.0 && secs >= max_seconds) {
        o.passed = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("runtime budget exceeded");
    }
    return {id, std::move(name), o.passed, o.measured, std::move(o.threshold), std::move(o.detail), secs};
}

Ket random_ket(std::mt19937_64 &rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Ket v(dim);
    for (int i = 0; i < dim; ++i) {
        double re = g(rng);
        double im = g(rng);
        v(i) = cplx(re, im);
    }
    return v.normalized();
}

cplx random_amplitude(std::mt19937_64 &rng, double lo, double hi) {
    std::uniform_real_distribution<double> mod(lo, hi);
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    double r = mod(rng);
    double p = ph(rng);
    return std::polar(r, p);
}

// Poisson weights e^{-m} m^n / n! by recurrence, independent of the Fock code.
std::vector<double> poisson_weights(double mean, int count) {
    std::vector<double> p(count);
    p[0] = std::exp(-mean);
    for (int n = 1; n < count; ++n) {
        p[n] = p[n - 1] * mean / n;
    }
    return p;
}

// --- 1 -----------------------------------------------------------------------

Outcome flat_average_is_poisson() {
    const int cutoff = 32;
    auto state = DensityMatrix::pure(coherent_amplitudes(1.0, cutoff).amplitudes());
    auto rep = phase_average(state, CircularPrior::flat());
    std::vector<double> p = poisson_weights(1.0, cutoff + 1);
    double worst = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        worst = std::max(worst, std::abs(rep.output(n, n) - p[n]));
    }
    bool ok = worst < 1e-10 && rep.offdiag_norm < 1e-12;
    return {ok, worst, "< 1e-10", "offdiag " + format_double(rep.offdiag_norm) + " (< 1e-12)"};
}

// --- 2 -----------------------------------------------------------------------

Outcome prior_independence(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x2ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    std::vector<double> grid_points(9), grid_weights(9);
    for (int k = 0; k < 9; ++k) {
        grid_points[k] = angle(rng);
        grid_weights[k] = 0.5 * (unit(rng) + 1.0) + 0.01;
    }
    const std::vector<CircularPrior> priors = {
        CircularPrior::flat(),
        CircularPrior::delta(0.3),
        CircularPrior::delta(4.0),
        CircularPrior::von_mises(1.0, 5.0),
        CircularPrior::grid_normalized(grid_points, grid_weights),
    };

    const int trials = 120;
    double worst = 0.0;
    int not_insensitive = 0;
    for (int t = 0; t < trials; ++t) {
        DensityMatrix state = [&] {
            switch (t % 3) {
                case 0: {
                    cplx a = random_amplitude(rng, 0.0, 1.5);
                    return DensityMatrix::pure(coherent_amplitudes(a, default_cutoff(std::norm(a))).amplitudes());
                }
                case 1:
                    return DensityMatrix::pure(random_ket(rng, 16));
                default: {
                    Matrix m = Matrix::Zero(16, 16);
                    for (int r = 0; r < 3; ++r) {
                        Ket v = random_ket(rng, 16);
                        m += (v * v.adjoint()) / 3.0;
                    }
                    return DensityMatrix(m);
                }
            }
        }();
        Matrix obs = Matrix::Zero(state.dim(), state.dim());
        for (int n = 0; n < state.dim(); ++n) {
            obs(n, n) = unit(rng) * (1.0 + n);
        }
        if (!is_phase_insensitive(obs).insensitive) {
            ++not_insensitive;
        }
        worst = std::max(worst, prior_independence_check(state, obs, priors));
    }
    bool ok = worst < 1e-8 && not_insensitive == 0;
    return {ok, worst, "< 1e-8", std::to_string(trials) + " observables x 5 priors"};
}

// --- 3 -----------------------------------------------------------------------

Outcome flat_shift_average_is_identity() {
    LatticeSpace space(31);
    DensityMatrix rho = displacement_average(LatticeState::site(space, 7), LatticePrior::flat(31));
    Matrix target = Matrix::Identity(31, 31) / 31.0;
    double dev = max_abs(rho.entries() - target);
    return {dev < 1e-12, dev, "< 1e-12", "d = 31"};
}

// --- 4 -----------------------------------------------------------------------

Outcome relative_factor_survives(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x4ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LatticeSpace space(31);
    std::vector<LatticePrior> priors;
    for (int p = 0; p < 5; ++p) {
        std::vector<double> w(31);
        for (double &x : w) {
            x = unit(rng) + 1e-3;
        }
        double s = 0.0;
        for (double x : w) {
            s += x;
        }
        for (double &x : w) {
            x /= s;
        }
        priors.emplace_back(std::move(w));
    }
    double worst_purity = 1.0;
    double worst_fid = 1.0;
    for (int s = 0; s < 20; ++s) {
        Ket rel = random_ket(rng, 31);
        Ket center = random_ket(rng, 31);
        LatticeState psi = to_lattice(RelCenterState::product(space, rel, center));
        for (const auto &prior : priors) {
            DensityMatrix rho = to_rel_center(displacement_average(psi, prior), space);
            FactorizationCheck fc = factorization_check(rho, space);
            worst_purity = std::min(worst_purity, fc.rel_purity);
            worst_fid = std::min(worst_fid, fidelity(fc.rel_factor, rel));
        }
    }
    double worst = std::min(worst_purity, worst_fid);
    bool ok = worst_purity >= 1.0 - 1e-8 && worst_fid >= 1.0 - 1e-8;
    return {ok, worst, ">= 1 - 1e-8",
            "min purity " + format_double(worst_purity) + ", min fidelity " + format_double(worst_fid)};
}

// --- 5 -----------------------------------------------------------------------

Outcome sum_gate_legal_and_entangling() {
    LatticeSpace space(31);
    Matrix u = sum_gate(space);
    double comm = total_momentum_commutator(space, u);
    Ket rel = Ket::Zero(31);
    rel(0) = rel(3) = 1.0 / std::sqrt(2.0);
    Ket center = Ket::Zero(31);
    center(4) = 1.0;
    LatticeState in = to_lattice(RelCenterState::product(space, rel, center));
    LatticeState out(space, 2, u * in.amplitudes());
    double bits = entanglement_entropy_bits(to_rel_center(out).amplitudes(), 31, 31);
    bool ok = comm < 1e-10 && std::abs(bits - 1.0) <= 1e-8;
    return {ok, bits, "1 +- 1e-8 bits", "||[SUM, P]||_max = " + format_double(comm) + " (< 1e-10)"};
}

// --- 6 -----------------------------------------------------------------------

Outcome block_identity_exact(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6ULL);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        cplx a = random_amplitude(rng, 0.0, 3.0);
        cplx b = random_amplitude(rng, 0.1, 3.0);
        worst = std::max(worst, verify_block_identity(a, b, default_two_mode_cutoff(a, b)));
    }
    return {worst < 1e-10, worst, "< 1e-10", "20 random (alpha, beta), |alpha|, |beta| <= 3"};
}

// --- 7 -----------------------------------------------------------------------

Outcome contraction_converges() {
    const int sizes[] = {25, 100, 400, 1600};
    std::vector<double> fids;
    for (int n : sizes) {
        double xi = 1.0 / std::sqrt(static_cast<double>(n));
        ContractedBlock cb = contract_block(n, spin_coherent_block(n, xi), n);
        fids.push_back(fidelity(coherent_amplitudes(1.0, n).amplitudes(), cb.state.amplitudes()));
    }
    bool monotone = std::is_sorted(fids.begin(), fids.end());
    double infid = 1.0 - fids.back();
    std::ostringstream os;
    os << "1-F:";
    for (double f : fids) {
        os << ' ' << format_double(1.0 - f);
    }
    return {monotone && infid < 1e-3, infid, "< 1e-3 and monotone", os.str()};
}

// --- 8 -----------------------------------------------------------------------

Outcome factorization_quality() {
    // Sum of squared Poisson(1) weights, i.e. e^{-2} I_0(2).
    double dephased = 0.0;
    for (double p : poisson_weights(1.0, 60)) {
        dephased += p * p;
    }
    const double betas[] = {2.0, 4.0, 8.0, 16.0};
    std::vector<double> fids;
    double min_gap = 1.0;
    std::ostringstream os;
    for (double b : betas) {
        FactorizationReport r =
            factorization_fidelity(1.0, b, default_two_mode_cutoff(1.0, b), default_rel_cutoff(1.0));
        fids.push_back(r.fidelity_to_target);
        if (b >= 4.0) {
            min_gap = std::min(min_gap, r.rel_state_purity - dephased);
        }
        os << "beta=" << b << " F=" << format_double(r.fidelity_to_target)
           << " purity=" << format_double(r.rel_state_purity) << "; ";
    }
    bool increasing = std::adjacent_find(fids.begin(), fids.end(), std::greater_equal<>()) == fids.end();
    bool ok = increasing && fids.back() >= 0.99 && min_gap >= 0.5;
    os << "dephased purity " << format_double(dephased) << ", min purity gap " << format_double(min_gap);
    return {ok, fids.back(), ">= 0.99, increasing, purity gap >= 0.5", os.str()};
}

// --- 9 -----------------------------------------------------------------------

Outcome gauge_invariance() {
    const std::pair<cplx, cplx> cases[] = {{1.0, 4.0}, {std::polar(0.7, 0.4), std::polar(5.0, -1.1)}};
    double worst = 0.0;
    for (const auto &[a, b] : cases) {
        int c = default_two_mode_cutoff(a, b);
        int rc = default_rel_cutoff(a);
        FactorizationReport base = factorization_fidelity(a, b, c, rc);
        for (double chi : {0.3, 2.9}) {
            cplx g = std::polar(1.0, chi);
            FactorizationReport r = factorization_fidelity(a * g, b * g, c, rc);
            worst = std::max(worst, std::abs(r.fidelity_to_target - base.fidelity_to_target));
            worst = std::max(worst, std::abs(r.rel_state_purity - base.rel_state_purity));
        }
    }
    return {worst < 1e-10, worst, "< 1e-10", "chi in {0.3, 2.9}"};
}

}  // namespace

std::vector<CriterionResult> run_numeric_criteria(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    out.push_back(timed(1, "flat phase average of |alpha|=1 is Poisson-diagonal", flat_average_is_poisson, 1.0));
    out.push_back(timed(2, "number-conserving expectations are prior independent",
                        [seed] { return prior_independence(seed); }, 10.0));
    out.push_back(timed(3, "flat shift average of a site eigenstate is I/d", flat_shift_average_is_identity));
    out.push_back(
        timed(4, "relative factor of product states survives shift averaging", [seed] { return relative_factor_survives(seed); }));
    out.push_back(timed(5, "SUM gate conserves total momentum and entangles", sum_gate_legal_and_entangling));
    out.push_back(timed(6, "two-mode coherent blocks are exact spin coherent states",
                        [seed] { return block_identity_exact(seed); }, 5.0));
    out.push_back(timed(7, "spin coherent blocks contract to oscillator coherent states", contraction_converges));
    out.push_back(timed(8, "relative-phase state approaches the target coherent state", factorization_quality, 60.0));
    out.push_back(timed(9, "factorization report is invariant under a global phase", gauge_invariance));
    return out;
}

Report acceptance_report(const std::vector<CriterionResult> &results, std::uint64_t seed) {
    Report rep;
    rep.add_meta("tool", std::string("relphase selftest"));
    rep.add_meta("seed", static_cast<long long>(seed));
    add_tolerances(rep);
    int passed = 0;
    for (const auto &r : results) {
        passed += r.passed ? 1 : 0;
    }
    rep.add_meta("result.passed", static_cast<long long>(passed));
    rep.add_meta("result.total", static_cast<long long>(results.size()));
    Table &t = rep.add_table("criteria", {"id", "name", "passed", "measured", "threshold", "detail"});
    for (const auto &r : results) {
        t.add_row({static_cast<long long>(r.id), r.name, r.passed, r.measured, r.threshold, r.detail});
    }
    return rep;
}

CriterionResult run_determinism_criterion(std::uint64_t seed, const std::vector<CriterionResult> &first) {
    return timed(10, "same seed gives byte-identical reports", [&] {
        std::vector<CriterionResult> second = run_numeric_criteria(seed);
        Report a = acceptance_report(first, seed);
        Report b = acceptance_report(second, seed);
        bool same = a.to_csv() == b.to_csv() && a.to_json() == b.to_json();
        return Outcome{same, same ? 0.0 : 1.0, "identical", same ? "csv and json match" : "reports differ"};
    });
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out = run_numeric_criteria(seed);
    out.push_back(run_determinism_criterion(seed, out));
    return out;
}

}  // namespace relphase
