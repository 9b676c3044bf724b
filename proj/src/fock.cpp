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

#include "relphase/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "relphase/error.hpp"

namespace relphase {

namespace {

// Density matrices whose purity is this close to one are treated as pure by
// `fidelity`, which then works with the dominant eigenvector.
constexpr double kPureThreshold = 1e-12;

Ket dominant_eigenvector(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return es.eigenvectors().col(m.rows() - 1);
}

std::optional<Ket> as_pure(const DensityMatrix &m) {
    if (m.ket()) {
        return m.ket();
    }
    if (m.purity() >= 1.0 - kPureThreshold) {
        return dominant_eigenvector(m.entries());
    }
    return std::nullopt;
}

}  // namespace

std::string_view basis_name(Basis b) {
    switch (b) {
        case Basis::Fock:
            return "fock";
        case Basis::Lattice:
            return "lattice";
        case Basis::RelCenter:
            return "rel-center";
        case Basis::RelativeFock:
            return "relative-fock";
        case Basis::Generic:
            break;
    }
    return "generic";
}

FockVector::FockVector(Ket amplitudes, double tail_mass) : amplitudes_(std::move(amplitudes)), tail_mass_(tail_mass) {
    if (amplitudes_.size() == 0) {
        throw ConfigError("FockVector needs at least one amplitude (cutoff >= 0)");
    }
}

FockVector FockVector::number_state(int n, int cutoff) {
    if (cutoff < 0 || n < 0 || n > cutoff) {
        throw ConfigError("number state index out of range");
    }
    Ket v = Ket::Zero(cutoff + 1);
    v(n) = 1.0;
    return FockVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries, Basis basis, const Tolerances &tol) : basis_(basis) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw ConfigError("density matrix must be square and non-empty");
    }
    double herm = hermiticity_residual(entries);
    if (herm > tol.herm) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (residual " << herm << ")";
        throw ToleranceError(os.str());
    }
    double tr = entries.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " differs from 1";
        throw ToleranceError(os.str());
    }
    entries_ = (entries + entries.adjoint()) * 0.5;
}

DensityMatrix DensityMatrix::pure(const Ket &psi, Basis basis, const Tolerances &tol) {
    DensityMatrix out(psi * psi.adjoint(), basis, tol);
    out.ket_ = psi;
    return out;
}

double DensityMatrix::purity() const {
    // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
    return entries_.squaredNorm();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

void DensityMatrix::check_psd(const Tolerances &tol) const {
    double lo = min_eigenvalue();
    if (lo < -tol.psd) {
        std::ostringstream os;
        os << "density matrix has eigenvalue " << lo << " below -psd_tol";
        throw ToleranceError(os.str());
    }
}

DensityMatrix DensityMatrix::with_basis(Basis b) const {
    DensityMatrix out = *this;
    out.basis_ = b;
    return out;
}

int default_cutoff(double mean) {
    if (mean < 0) {
        throw ConfigError("mean photon number must be non-negative");
    }
    return static_cast<int>(std::ceil(mean + 8.0 * std::sqrt(mean) + 10.0));
}

double poisson_tail(double mean, int cutoff) {
    if (mean <= 0.0) {
        return 0.0;
    }
    int n = std::max(cutoff + 1, 0);
    double term = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    double sum = 0.0;
    // Terms grow until n ~ mean, then decay faster than geometrically.
    for (int guard = 0; guard < 1000000; ++guard, ++n) {
        sum += term;
        if (n > mean && (term < 1e-300 || term < sum * 1e-18)) {
            break;
        }
        term *= mean / (n + 1);
    }
    return sum;
}

FockVector coherent_amplitudes(cplx alpha, int cutoff, const Tolerances &tol) {
    if (cutoff < 0) {
        throw ConfigError("cutoff must be non-negative");
    }
    double r = std::abs(alpha);
    double mean = r * r;
    Ket amps = Ket::Zero(cutoff + 1);
    if (r == 0.0) {
        amps(0) = 1.0;
        return FockVector(std::move(amps), 0.0);
    }
    double tail = poisson_tail(mean, cutoff);
    if (tail > tol.tail) {
        std::ostringstream os;
        os << "cutoff " << cutoff << " leaves Poisson tail " << tail << " for |alpha|^2 = " << mean;
        throw TruncationError(os.str(), tail);
    }
    double log_r = std::log(r);
    double phase = std::arg(alpha);
    for (int n = 0; n <= cutoff; ++n) {
        double log_mag = -0.5 * mean + n * log_r - 0.5 * std::lgamma(n + 1.0);
        amps(n) = std::polar(std::exp(log_mag), n * phase);
    }
    return FockVector(std::move(amps), tail);
}

DensityMatrix number_projector(int n, int dim) {
    if (dim <= 0 || n < 0 || n >= dim) {
        throw ConfigError("number_projector index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(n, n) = 1.0;
    return DensityMatrix(std::move(m), Basis::Fock);
}

Ket tensor(const Ket &a, const Ket &b, const Tolerances &tol) {
    auto na = static_cast<std::size_t>(a.size());
    auto nb = static_cast<std::size_t>(b.size());
    if (na == 0 || nb == 0 || na * nb > tol.max_dim) {
        throw ConfigError("tensor product dimension exceeds max_dim");
    }
    Ket out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b, const Tolerances &tol) {
    auto na = static_cast<std::size_t>(a.dim());
    auto nb = static_cast<std::size_t>(b.dim());
    if (na * nb > tol.max_dim) {
        throw ConfigError("tensor product dimension exceeds max_dim");
    }
    const int db = b.dim();
    Matrix out(a.dim() * db, a.dim() * db);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            out.block(i * db, j * db, db, db) = a(i, j) * b.entries();
        }
    }
    Basis basis = a.basis() == b.basis() ? a.basis() : Basis::Generic;
    if (a.ket() && b.ket()) {
        return DensityMatrix::pure(tensor(*a.ket(), *b.ket(), tol), basis, tol);
    }
    return DensityMatrix(std::move(out), basis, tol);
}

DensityMatrix partial_trace(const DensityMatrix &rho, int dim_a, int dim_b, Keep keep) {
    if (dim_a <= 0 || dim_b <= 0 || rho.dim() != dim_a * dim_b) {
        throw ConfigError("partial_trace: dim(rho) != dim_a * dim_b");
    }
    const Matrix &m = rho.entries();
    Matrix out;
    if (keep == Keep::A) {
        out = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i) {
            for (int k = 0; k < dim_a; ++k) {
                out(i, k) = m.block(i * dim_b, k * dim_b, dim_b, dim_b).trace();
            }
        }
    } else {
        out = Matrix::Zero(dim_b, dim_b);
        for (int i = 0; i < dim_a; ++i) {
            out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
        }
    }
    return DensityMatrix(std::move(out), rho.basis());
}

double fidelity(const DensityMatrix &rho, const Ket &psi) {
    if (psi.size() != rho.dim()) {
        throw ConfigError("fidelity: dimension mismatch");
    }
    double f = psi.dot(rho.entries() * psi).real();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(const Ket &a, const Ket &b) {
    if (a.size() != b.size()) {
        throw ConfigError("fidelity: dimension mismatch");
    }
    return std::norm(a.dot(b));
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma, const Tolerances &tol) {
    if (rho.dim() != sigma.dim()) {
        throw ConfigError("fidelity: dimension mismatch");
    }
    if (auto psi = as_pure(sigma)) {
        rho.check_psd(tol);
        return fidelity(rho, *psi);
    }
    if (auto psi = as_pure(rho)) {
        sigma.check_psd(tol);
        return fidelity(sigma, *psi);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries());
    Eigen::VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -tol.psd) {
        throw ToleranceError("fidelity: first argument is not positive semidefinite");
    }
    // Work on the numerical support of rho: B = V_s sqrt(p_s), and the nonzero
    // eigenvalues of sqrt(rho) sigma sqrt(rho) are those of B^dagger sigma B.
    const double eps = std::numeric_limits<double>::epsilon() * rho.dim();
    const double lam_floor = eps * lam.maxCoeff();
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) > lam_floor) {
            support.push_back(i);
        }
    }
    Matrix b(rho.dim(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
        b.col(k) = std::sqrt(lam(support[k])) * es.eigenvectors().col(support[k]);
    }
    Matrix inner = b.adjoint() * sigma.entries() * b;
    inner = (inner + inner.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> inner_es(inner, Eigen::EigenvaluesOnly);
    Eigen::VectorXd mu = inner_es.eigenvalues();
    if (mu.minCoeff() < -tol.psd) {
        throw ToleranceError("fidelity: second argument is not positive semidefinite");
    }
    const double mu_floor = eps * mu.maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        s += mu(i) > mu_floor ? std::sqrt(mu(i)) : 0.0;
    }
    return std::clamp(s * s, 0.0, 1.0);
}

double expectation(const Matrix &obs, const DensityMatrix &rho, const Tolerances &tol) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
        throw ConfigError("expectation: dimension mismatch");
    }
    if (hermiticity_residual(obs) > tol.herm) {
        throw ToleranceError("expectation: observable is not Hermitian");
    }
    // Tr[A rho] = sum_ij A_ij rho_ji
    cplx v = obs.cwiseProduct(rho.entries().transpose()).sum();
    if (std::abs(v.imag()) > 1e-10) {
        throw ToleranceError("expectation: imaginary residue above 1e-10");
    }
    return v.real();
}

double entanglement_entropy_bits(const Ket &psi, int dim_a, int dim_b) {
    if (dim_a <= 0 || dim_b <= 0 || psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw ConfigError("entanglement_entropy_bits: dimension mismatch");
    }
    // Row-major reshape: M(i, j) = psi(i * dim_b + j).
    Matrix m(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i) {
        m.row(i) = psi.segment(static_cast<Eigen::Index>(i) * dim_b, dim_b).transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    Eigen::VectorXd p = svd.singularValues().array().square();
    p /= p.sum();
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

double hermiticity_residual(const Matrix &a) {
    if (a.rows() != a.cols()) {
        throw ConfigError("hermiticity_residual: matrix is not square");
    }
    return max_abs(a - a.adjoint());
}

double max_abs(const Matrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Matrix number_operator(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        m(n, n) = static_cast<double>(n);
    }
    return m;
}

Matrix annihilation_operator(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        m(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return m;
}

Matrix position_quadrature(int dim) {
    Matrix a = annihilation_operator(dim);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

}  // namespace relphase
