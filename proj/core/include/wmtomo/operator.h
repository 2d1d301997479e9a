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

#ifndef WMTOMO_OPERATOR_H
#define WMTOMO_OPERATOR_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wmtomo {

class Rng;

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances shared by the validated constructors.
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// A d x d complex matrix, d >= 2.
class Operator {
   public:
    explicit Operator(Matrix entries);

    static Operator identity(size_t dim);
    static Operator zero(size_t dim);

    size_t dim() const noexcept {
        return static_cast<size_t>(m_.rows());
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    Complex operator()(size_t row, size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    Complex trace() const {
        return m_.trace();
    }
    Operator adjoint() const {
        return Operator(m_.adjoint());
    }

   private:
    Matrix m_;
};

/// Operator with A = A^dagger. Construction checks the asymmetry against
/// kHermitianTolerance and stores the exact symmetrization (A + A^dagger)/2.
class HermitianOperator {
   public:
    explicit HermitianOperator(const Operator &op);
    explicit HermitianOperator(const Matrix &entries);

    /// Symmetrizes without the asymmetry check. For outputs assembled from
    /// data that is only Hermitian up to noise.
    static HermitianOperator symmetrized(const Matrix &entries);

    static HermitianOperator identity(size_t dim);
    static HermitianOperator projector(const Vector &ket);

    size_t dim() const noexcept {
        return base_.dim();
    }
    const Operator &base() const noexcept {
        return base_;
    }
    const Matrix &matrix() const noexcept {
        return base_.matrix();
    }
    Complex operator()(size_t row, size_t col) const {
        return base_(row, col);
    }
    double trace() const {
        return base_.trace().real();
    }

    HermitianOperator operator+(const HermitianOperator &other) const;
    HermitianOperator operator-(const HermitianOperator &other) const;
    HermitianOperator scaled(double factor) const;

   private:
    struct Unchecked {};
    HermitianOperator(Unchecked, const Matrix &entries);

    Operator base_;
};

/// Unit-trace positive-semidefinite state. The trace is renormalized to
/// exactly 1 after checking it is within kTraceTolerance of 1.
class DensityMatrix {
   public:
    explicit DensityMatrix(const HermitianOperator &op);

    /// |psi><psi| / <psi|psi>. Any nonzero vector is accepted.
    static DensityMatrix pure(const Vector &ket);
    static DensityMatrix maximally_mixed(size_t dim);

    size_t dim() const noexcept {
        return base_.dim();
    }
    const HermitianOperator &hermitian() const noexcept {
        return base_;
    }
    const Matrix &matrix() const noexcept {
        return base_.matrix();
    }

   private:
    HermitianOperator base_;
};

/// Unit-trace Hermitian operator with no positivity requirement. Carries
/// the sum of the magnitudes of its negative eigenvalues.
class TransientDensityMatrix {
   public:
    explicit TransientDensityMatrix(const HermitianOperator &op);

    size_t dim() const noexcept {
        return base_.dim();
    }
    const HermitianOperator &hermitian() const noexcept {
        return base_;
    }
    const Matrix &matrix() const noexcept {
        return base_.matrix();
    }
    double negativity() const noexcept {
        return negativity_;
    }
    double min_eigenvalue() const noexcept {
        return min_eigenvalue_;
    }

   private:
    HermitianOperator base_;
    double min_eigenvalue_;
    double negativity_;
};

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column k is the eigenvector of eigenvalues[k].
    Operator eigenvectors;
};

/// Full eigendecomposition. Throws EigenSolverFailure (with the residual
/// norm in the message) if the solver does not converge or the
/// reconstruction V diag(lambda) V^dagger misses A by more than 1e-10
/// relative to max(1, ||A||_F).
EigenDecomposition eigh(const HermitianOperator &a);

/// Ascending eigenvalues only.
std::vector<double> eigenvalues(const HermitianOperator &a);

double min_eigenvalue(const HermitianOperator &a);

/// Principal square root. Eigenvalues in [-1e-10, 0) are clipped to zero;
/// anything below throws NotPositiveSemidefinite.
HermitianOperator sqrt_psd(const HermitianOperator &a);

/// Inverse of the principal square root; requires A strictly positive.
HermitianOperator inverse_sqrt_pd(const HermitianOperator &a);

/// Re Tr{AB}.
double hs_inner(const HermitianOperator &a, const HermitianOperator &b);

/// (1/2) sum_k |lambda_k(A - B)|.
double trace_distance(const HermitianOperator &a, const HermitianOperator &b);

double frobenius_norm(const Matrix &a);
double frobenius_distance(const Matrix &a, const Matrix &b);

/// rho = G G^dagger / Tr{G G^dagger} with G a dim x rank matrix of standard
/// complex Gaussians drawn row-major from `rng` (real part first).
DensityMatrix random_density_matrix(size_t dim, size_t rank, Rng &rng);

/// Same, with a fresh generator seeded by `seed`.
DensityMatrix random_density_matrix(size_t dim, size_t rank, uint64_t seed);

HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

/// Computational basis vector |k> in dimension dim.
Vector basis_ket(size_t dim, size_t k);

void require_same_dim(size_t a, size_t b, const char *what);

}  // namespace wmtomo

#endif
