// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmtomo/operator.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "wmtomo/error.h"
#include "wmtomo/rng.h"

namespace wmtomo {

namespace {

double max_asymmetry(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::string to_string(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

// Applies f to the eigenvalues: V f(lambda) V^dagger.
template <typename F>
Matrix spectral_apply(const EigenDecomposition &eig, F f) {
    const Matrix &v = eig.eigenvectors.matrix();
    Eigen::VectorXd mapped(static_cast<Eigen::Index>(eig.eigenvalues.size()));
    for (size_t k = 0; k < eig.eigenvalues.size(); k++) {
        mapped[static_cast<Eigen::Index>(k)] = f(eig.eigenvalues[k]);
    }
    return v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace

void require_same_dim(size_t a, size_t b, const char *what) {
    if (a != b) {
        fail(ErrorKind::DimensionMismatch,
             std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
        fail(ErrorKind::DimensionMismatch,
             "operator must be square, got " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    if (m_.rows() < 2) {
        fail(ErrorKind::InvalidArgument, "operator dimension must be at least 2");
    }
    if (!m_.allFinite()) {
        fail(ErrorKind::InvalidArgument, "operator has non-finite entries");
    }
}

Operator Operator::identity(size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Identity(d, d));
}

Operator Operator::zero(size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Zero(d, d));
}

HermitianOperator::HermitianOperator(const Operator &op) : HermitianOperator(op.matrix()) {
}

HermitianOperator::HermitianOperator(const Matrix &entries) : base_(entries) {
    const double asym = max_asymmetry(entries);
    if (asym > kHermitianTolerance) {
        fail(ErrorKind::NotHermitian, "max |A[j,k] - conj(A[k,j])| = " + to_string(asym));
    }
    base_ = Operator((entries + entries.adjoint()) * 0.5);
}

HermitianOperator::HermitianOperator(Unchecked, const Matrix &entries)
    : base_((entries + entries.adjoint()) * 0.5) {
}

HermitianOperator HermitianOperator::symmetrized(const Matrix &entries) {
    return HermitianOperator(Unchecked{}, entries);
}

HermitianOperator HermitianOperator::identity(size_t dim) {
    return HermitianOperator(Operator::identity(dim));
}

HermitianOperator HermitianOperator::projector(const Vector &ket) {
    const double norm = ket.norm();
    if (!(norm > 0.0)) {
        fail(ErrorKind::InvalidArgument, "projector onto the zero vector");
    }
    const Vector unit = ket / norm;
    return HermitianOperator(Unchecked{}, unit * unit.adjoint());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator &other) const {
    require_same_dim(dim(), other.dim(), "operator sum");
    return HermitianOperator(Unchecked{}, matrix() + other.matrix());
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &other) const {
    require_same_dim(dim(), other.dim(), "operator difference");
    return HermitianOperator(Unchecked{}, matrix() - other.matrix());
}

HermitianOperator HermitianOperator::scaled(double factor) const {
    return HermitianOperator(Unchecked{}, matrix() * factor);
}

DensityMatrix::DensityMatrix(const HermitianOperator &op) : base_(op) {
    const double tr = op.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        fail(ErrorKind::BadTrace, "density matrix trace " + to_string(tr) + " is not 1");
    }
    base_ = op.scaled(1.0 / tr);
    const double lo = min_eigenvalue(base_);
    if (lo < -kPsdTolerance) {
        fail(ErrorKind::NotPositiveSemidefinite, "density matrix has eigenvalue " + to_string(lo));
    }
}

DensityMatrix DensityMatrix::pure(const Vector &ket) {
    return DensityMatrix(HermitianOperator::projector(ket));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t dim) {
    return DensityMatrix(HermitianOperator::identity(dim).scaled(1.0 / static_cast<double>(dim)));
}

TransientDensityMatrix::TransientDensityMatrix(const HermitianOperator &op) : base_(op) {
    const double tr = op.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        fail(ErrorKind::BadTrace, "transient density matrix trace " + to_string(tr) + " is not 1");
    }
    base_ = op.scaled(1.0 / tr);
    const auto lambda = eigenvalues(base_);
    min_eigenvalue_ = lambda.front();
    negativity_ = 0.0;
    for (double l : lambda) {
        if (l < 0.0) {
            negativity_ -= l;
        }
    }
}

EigenDecomposition eigh(const HermitianOperator &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::EigenSolverFailure, "Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd &values = solver.eigenvalues();
    const Matrix &vectors = solver.eigenvectors();
    const Matrix rebuilt = vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
    const double residual = frobenius_distance(rebuilt, a.matrix());
    if (!(residual <= 1e-10 * std::max(1.0, frobenius_norm(a.matrix())))) {
        fail(ErrorKind::EigenSolverFailure, "reconstruction residual " + to_string(residual));
    }
    return EigenDecomposition{std::vector<double>(values.begin(), values.end()), Operator(vectors)};
}

std::vector<double> eigenvalues(const HermitianOperator &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::EigenSolverFailure, "Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd &values = solver.eigenvalues();
    return {values.begin(), values.end()};
}

double min_eigenvalue(const HermitianOperator &a) {
    return eigenvalues(a).front();
}

HermitianOperator sqrt_psd(const HermitianOperator &a) {
    const auto eig = eigh(a);
    if (eig.eigenvalues.front() < -kPsdTolerance) {
        fail(ErrorKind::NotPositiveSemidefinite,
             "square root of operator with eigenvalue " + to_string(eig.eigenvalues.front()));
    }
    return HermitianOperator::symmetrized(spectral_apply(eig, [](double l) { return std::sqrt(std::max(l, 0.0)); }));
}

HermitianOperator inverse_sqrt_pd(const HermitianOperator &a) {
    const auto eig = eigh(a);
    if (!(eig.eigenvalues.front() > 0.0)) {
        fail(ErrorKind::NotPositiveSemidefinite,
             "inverse square root of operator with eigenvalue " + to_string(eig.eigenvalues.front()));
    }
    return HermitianOperator::symmetrized(spectral_apply(eig, [](double l) { return 1.0 / std::sqrt(l); }));
}

double hs_inner(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a.dim(), b.dim(), "hs_inner");
    // Tr{AB} = sum_jk A[j,k] B[k,j]; for Hermitian B that is sum A[j,k] conj(B[j,k]).
    return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

double trace_distance(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a.dim(), b.dim(), "trace_distance");
    double total = 0.0;
    for (double l : eigenvalues(a - b)) {
        total += std::abs(l);
    }
    return 0.5 * total;
}

double frobenius_norm(const Matrix &a) {
    return a.norm();
}

double frobenius_distance(const Matrix &a, const Matrix &b) {
    return (a - b).norm();
}

DensityMatrix random_density_matrix(size_t dim, size_t rank, Rng &rng) {
    if (dim < 2) {
        fail(ErrorKind::InvalidArgument, "dimension must be at least 2");
    }
    if (rank < 1 || rank > dim) {
        fail(ErrorKind::InvalidArgument,
             "rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]");
    }
    Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
    for (Eigen::Index r = 0; r < g.rows(); r++) {
        for (Eigen::Index c = 0; c < g.cols(); c++) {
            g(r, c) = rng.complex_normal();
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(HermitianOperator::symmetrized(rho));
}

DensityMatrix random_density_matrix(size_t dim, size_t rank, uint64_t seed) {
    Rng rng(seed);
    return random_density_matrix(dim, rank, rng);
}

HermitianOperator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(m);
}

HermitianOperator pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return HermitianOperator(m);
}

HermitianOperator pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(m);
}

Vector basis_ket(size_t dim, size_t k) {
    if (k >= dim) {
        fail(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(k) + " in dimension " + std::to_string(dim));
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    return v;
}

}  // namespace wmtomo
