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

#include <cmath>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "gtest/gtest.h"
#include "relphase/error.hpp"
#include "relphase/priors.hpp"
#include "relphase/way_lattice.hpp"

using namespace relphase;

namespace {

Matrix random_hermitian(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = cplx(g(rng), g(rng));
        }
    }
    return (m + m.adjoint()) / 2.0;
}

Ket random_ket(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Ket v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = cplx(g(rng), g(rng));
    }
    return v.normalized();
}

Matrix translation_average(const LatticeSpace &space, const Matrix &h, int particles) {
    Matrix out = Matrix::Zero(h.rows(), h.cols());
    for (int z = 0; z < space.d(); ++z) {
        Matrix dz = displacement_matrix(space, z, particles);
        out += dz * h * dz.adjoint();
    }
    return out / static_cast<double>(space.d());
}

}  // namespace

TEST(way_lattice, space_labels) {
    LatticeSpace s(7);
    EXPECT_EQ(s.wrap(-1), 6);
    EXPECT_EQ(s.wrap(15), 1);
    EXPECT_EQ(s.centered(0), 0);
    EXPECT_EQ(s.centered(3), 3);
    EXPECT_EQ(s.centered(4), -3);
    EXPECT_EQ(s.wrap(2LL * s.half()), 1);
    EXPECT_THROW(LatticeSpace(8), ConfigError);
    EXPECT_THROW(LatticeSpace(-3), ConfigError);
}

TEST(way_lattice, priors) {
    EXPECT_THROW(LatticePrior({0.5, 0.6}), ConfigError);
    EXPECT_EQ(LatticePrior::parse("delta:-1", 5).weights()[4], 1.0);
    EXPECT_NEAR(LatticePrior::parse("flat", 5).weights()[2], 0.2, 1e-16);
    EXPECT_THROW(LatticePrior::parse("gauss:1", 5), ConfigError);
}

TEST(way_lattice, displacement_moves_every_particle) {
    LatticeSpace s(5);
    LatticeState moved = displacement(2, LatticeState::sites(s, 1, 4));
    EXPECT_EQ(moved.amplitudes()(3 * 5 + 1), cplx(1.0));
    EXPECT_EQ(displacement(-1, LatticeState::site(s, 0)).amplitudes()(4), cplx(1.0));
    Matrix d1 = displacement_matrix(s, 1, 2);
    EXPECT_LT(max_abs(d1.adjoint() * d1 - Matrix::Identity(25, 25)), 1e-15);
}

TEST(way_lattice, momentum_generates_translations) {
    for (int particles : {1, 2}) {
        LatticeSpace s(5);
        Matrix p = total_momentum(s, particles);
        EXPECT_LT(hermiticity_residual(p), 1e-14);
        Matrix u = (cplx(0.0, -1.0) * p).exp();
        EXPECT_LT(max_abs(u - displacement_matrix(s, 1, particles)), 1e-12) << particles;
    }
}

TEST(way_lattice, momentum_spectrum) {
    LatticeSpace s(5);
    Eigen::SelfAdjointEigenSolver<Matrix> es(total_momentum(s, 2));
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 25);
    for (int k = 0; k < 5; ++k) {
        // each total momentum class k is hit by d pairs (k1, k2)
        int count = 0;
        for (double e : ev) {
            count += std::abs(e - kTwoPi * k / 5) < 1e-10;
        }
        EXPECT_EQ(count, 5) << k;
    }
}

TEST(way_lattice, momentum_function_is_diagonal_in_momentum) {
    LatticeSpace s(7);
    Matrix p = total_momentum(s, 1);
    Matrix c = momentum_function(s, [](double x) { return std::cos(x); }, 1);
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    Matrix expect = es.eigenvectors() * es.eigenvalues().array().cos().matrix().asDiagonal() *
                    es.eigenvectors().adjoint();
    EXPECT_LT(max_abs(c - expect), 1e-12);
}

TEST(way_lattice, structured_commutator_matches_dense) {
    std::mt19937_64 rng(23);
    for (int particles : {1, 2}) {
        LatticeSpace s(5);
        Matrix h = random_hermitian(particles == 1 ? 5 : 25, rng);
        Matrix p = total_momentum(s, particles);
        EXPECT_NEAR(total_momentum_commutator(s, h, particles), max_abs(h * p - p * h), 1e-12);
    }
}

TEST(way_lattice, translation_invariant_observables_are_prior_independent) {
    std::mt19937_64 rng(29);
    LatticeSpace s(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Matrix obs = translation_average(s, random_hermitian(25, rng), 2);
        LatticeState state(s, 2, random_ket(25, rng));
        std::vector<double> w(5);
        for (double &x : w) {
            x = u(rng);
        }
        double sum = w[0] + w[1] + w[2] + w[3] + w[4];
        for (double &x : w) {
            x /= sum;
        }
        std::vector<LatticePrior> priors = {LatticePrior::flat(5), LatticePrior::delta(5, trial % 5),
                                            LatticePrior(w)};
        InvarianceResult r = expectation_invariance(state, obs, priors);
        EXPECT_LT(r.commutator_norm, 1e-10);
        EXPECT_LT(r.deviation, 1e-10);
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(way_lattice, absolute_position_sees_the_prior) {
    LatticeSpace s(31);
    LatticeState state = LatticeState::sites(s, s.wrap(-2), 0);
    std::vector<LatticePrior> priors = {LatticePrior::delta(31, 0), LatticePrior::delta(31, 5)};
    InvarianceResult r = expectation_invariance(state, absolute_position(s, 0), priors);
    EXPECT_EQ(r.deviation, 5.0);
    EXPECT_GT(r.commutator_norm, 1.0);
}

TEST(way_lattice, flat_average_of_a_site_is_maximally_mixed) {
    LatticeSpace s(31);
    DensityMatrix rho = displacement_average(LatticeState::site(s, 7), LatticePrior::flat(31));
    EXPECT_LT(max_abs(rho.entries() - Matrix::Identity(31, 31) / 31.0), 1e-15);
}

TEST(way_lattice, rel_center_round_trip) {
    LatticeSpace s(7);
    RelCenterState rc = to_rel_center(LatticeState::sites(s, 5, 2));
    // x_r = 3, x_a = 0
    EXPECT_EQ(rc.amplitudes()(3 * 7 + 0), cplx(1.0));
    std::mt19937_64 rng(31);
    LatticeState psi(s, 2, random_ket(49, rng));
    EXPECT_LT((to_lattice(to_rel_center(psi)).amplitudes() - psi.amplitudes()).norm(), 1e-15);
    DensityMatrix rho = DensityMatrix::pure(psi.amplitudes(), Basis::Lattice);
    DensityMatrix back = to_lattice(to_rel_center(rho, s), s);
    EXPECT_LT(max_abs(back.entries() - rho.entries()), 1e-15);
}

TEST(way_lattice, product_states_stay_factorized) {
    std::mt19937_64 rng(37);
    LatticeSpace s(7);
    for (int trial = 0; trial < 10; ++trial) {
        Ket rel = random_ket(7, rng);
        LatticeState psi = to_lattice(RelCenterState::product(s, rel, random_ket(7, rng)));
        for (const auto &prior : {LatticePrior::flat(7), LatticePrior::delta(7, 3)}) {
            FactorizationCheck fc = factorization_check(to_rel_center(displacement_average(psi, prior), s), s);
            EXPECT_TRUE(fc.is_factorized);
            EXPECT_LT(fc.residual, 1e-12);
            EXPECT_NEAR(fc.rel_purity, 1.0, 1e-12);
            EXPECT_LT(max_abs(fc.rel_factor.entries() - rel * rel.adjoint()), 1e-12);
        }
    }
}

TEST(way_lattice, entangled_states_do_not_factorize) {
    LatticeSpace s(31);
    Ket ent = Ket::Zero(31 * 31);
    ent(0) = ent(1 * 31 + 5) = 1.0 / std::sqrt(2.0);
    LatticeState psi = to_lattice(RelCenterState(s, ent));
    FactorizationCheck fc = factorization_check(to_rel_center(displacement_average(psi, LatticePrior::flat(31)), s), s);
    EXPECT_FALSE(fc.is_factorized);
    EXPECT_NEAR(fc.residual, 1.0 / 62.0, 1e-14);
    EXPECT_NEAR(fc.rel_purity, 0.5, 1e-12);

    LatticeSpace s3(3);
    Ket maxent = Ket::Zero(9);
    for (int r = 0; r < 3; ++r) {
        maxent(r * 3 + r) = 1.0 / std::sqrt(3.0);
    }
    FactorizationCheck fm = factorization_check(DensityMatrix::pure(maxent, Basis::RelCenter), s3);
    EXPECT_NEAR(fm.residual, 1.0 / 3.0, 1e-14);
}

TEST(way_lattice, sum_gate) {
    LatticeSpace s(7);
    Matrix u = sum_gate(s);
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(49, 49)), 1e-15);
    EXPECT_LT(total_momentum_commutator(s, u), 1e-12);
    for (int r = 0; r < 7; ++r) {
        for (int a = 0; a < 7; ++a) {
            Ket rc = Ket::Zero(49);
            rc(r * 7 + a) = 1.0;
            LatticeState in = to_lattice(RelCenterState(s, rc));
            RelCenterState out = to_rel_center(LatticeState(s, 2, u * in.amplitudes()));
            EXPECT_EQ(out.amplitudes()(r * 7 + s.wrap(a + r)), cplx(1.0)) << r << "," << a;
        }
    }
}

TEST(way_lattice, sum_gate_entangles_relative_and_center) {
    LatticeSpace s(31);
    Ket rel = Ket::Zero(31);
    rel(0) = rel(3) = 1.0 / std::sqrt(2.0);
    Ket center = Ket::Zero(31);
    center(4) = 1.0;
    LatticeState in = to_lattice(RelCenterState::product(s, rel, center));
    LatticeState out(s, 2, sum_gate(s) * in.amplitudes());
    EXPECT_NEAR(entanglement_entropy_bits(to_rel_center(in).amplitudes(), 31, 31), 0.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy_bits(to_rel_center(out).amplitudes(), 31, 31), 1.0, 1e-12);
}

TEST(way_lattice, small_cases) {
    LatticeSpace s(31);
    EXPECT_EQ(displacement_matrix(s, 0, 1), Matrix::Identity(31, 31));
    EXPECT_EQ(displacement_matrix(s, 31, 1), Matrix::Identity(31, 31));
    EXPECT_EQ(displacement(3, LatticeState::sites(s, 1, 5)).amplitudes(), LatticeState::sites(s, 4, 8).amplitudes());
    EXPECT_EQ(to_rel_center(LatticeState::sites(s, 2, 2)).amplitudes()(0 * 31 + 4), cplx(1.0));

    std::mt19937_64 rng(47);
    LatticeState psi(LatticeSpace(5), 2, random_ket(25, rng));
    DensityMatrix same = displacement_average(psi, LatticePrior::delta(5, 0));
    EXPECT_LT(max_abs(same.entries() - psi.amplitudes() * psi.amplitudes().adjoint()), 1e-15);
}

TEST(way_lattice, sum_gate_without_control_is_trivial) {
    LatticeSpace s(31);
    std::mt19937_64 rng(53);
    Ket rel = Ket::Zero(31);
    rel(0) = 1.0;
    LatticeState in = to_lattice(RelCenterState::product(s, rel, random_ket(31, rng)));
    EXPECT_LT((sum_gate(s) * in.amplitudes() - in.amplitudes()).norm(), 1e-15);
}

TEST(way_lattice, unit_shift_moves_the_mean_by_one) {
    LatticeSpace s(31);
    LatticeState state = LatticeState::sites(s, 3, 10);
    std::vector<LatticePrior> priors = {LatticePrior::delta(31, 0), LatticePrior::delta(31, 1)};
    EXPECT_EQ(expectation_invariance(state, absolute_position(s, 0), priors).deviation, 1.0);
    EXPECT_EQ(expectation_invariance(state, Matrix::Identity(961, 961), priors).deviation, 0.0);
}
