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

#include "wmtomo/postselection.h"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.h"
#include "wmtomo/catalog.h"
#include "wmtomo/error.h"
#include "wmtomo/rng.h"

using namespace wmtomo;
using namespace wmtomo::testing;

namespace {

ErrorKind kind_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected wmtomo::Error";
    return ErrorKind::Config;
}

Vector ket(Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST(postselection, double_slit_transient) {
    const auto plus = DensityMatrix::pure(ket(1.0, 1.0));
    const auto rep = transient_state(plus, HermitianOperator::projector(ket(1.0, 0.0)), "path1");
    Matrix expected(2, 2);
    expected << 1.0, 0.5, 0.5, 0.0;
    EXPECT_EQ(rep.label, "path1");
    EXPECT_NEAR(rep.probability, 0.5, 1e-15);
    EXPECT_LT(frobenius_distance(rep.transient.matrix(), expected), 1e-15);
    EXPECT_NEAR(rep.min_eigenvalue, (1.0 - std::sqrt(2.0)) / 2.0, 1e-14);
    EXPECT_NEAR(rep.negativity, (std::sqrt(2.0) - 1.0) / 2.0, 1e-14);
    EXPECT_TRUE(rep.nonpositive());
}

TEST(postselection, identity_postselection_returns_state) {
    Rng rng(8);
    const auto rho = random_density_matrix(3, 2, rng);
    const auto rep = transient_state(rho, HermitianOperator::identity(3));
    EXPECT_NEAR(rep.probability, 1.0, 1e-12);
    EXPECT_LT(frobenius_distance(rep.transient.matrix(), rho.matrix()), 1e-14);
    EXPECT_FALSE(rep.nonpositive());
}

TEST(postselection, matches_dense_oracle_property) {
    Rng rng(31);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 50; trial++) {
            const auto rho = random_density_matrix(d, d, rng);
            const auto povm = random_povm(d, d, rng);
            const auto rep = transient_state(rho, povm.element(0));
            const Dense oracle = transient_oracle(to_dense(rho.matrix()), to_dense(povm.element(0).matrix()));
            ASSERT_LT(max_abs_diff(to_dense(rep.transient.matrix()), oracle), 1e-12);
            const auto lambda = jacobi_eigenvalues(oracle);
            ASSERT_NEAR(rep.min_eigenvalue, lambda.front(), 1e-10);
        }
    }
}

TEST(postselection, anticipatory_decomposition_property) {
    Rng rng(44);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++) {
            const auto rho = random_density_matrix(d, 1 + static_cast<size_t>(trial) % d, rng);
            const auto povm = random_povm(d, 2 + static_cast<size_t>(trial) % 5, rng);
            const auto dec = anticipatory_decomposition(rho, povm);
            ASSERT_LT(dec.residual, 1e-12);
            ASSERT_TRUE(dec.skipped.empty());
            double total = 0.0;
            for (const auto &rep : dec.reports) {
                total += rep.probability;
                ASSERT_NEAR(rep.transient.hermitian().trace(), 1.0, 1e-12);
            }
            ASSERT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(postselection, zero_probability_outcome) {
    const auto zero = DensityMatrix::pure(ket(1.0, 0.0));
    const auto pi1 = HermitianOperator::projector(ket(0.0, 1.0));
    EXPECT_EQ(kind_of([&] { transient_state(zero, pi1); }), ErrorKind::ZeroProbabilityPostselection);
    const auto dec = anticipatory_decomposition(zero, StrongPovm::projective(Matrix::Identity(2, 2), {"a", "b"}));
    ASSERT_EQ(dec.reports.size(), 1u);
    EXPECT_EQ(dec.skipped, std::vector<std::string>{"b"});
    EXPECT_LT(dec.residual, 1e-15);
}

TEST(postselection, rejects_non_effects) {
    const auto rho = DensityMatrix::maximally_mixed(2);
    EXPECT_EQ(kind_of([&] { transient_state(rho, HermitianOperator::identity(2).scaled(2.0)); }),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { transient_state(rho, pauli_z()); }), ErrorKind::NotPositiveSemidefinite);
    EXPECT_EQ(kind_of([&] { transient_state(rho, HermitianOperator::identity(3)); }), ErrorKind::DimensionMismatch);
}

TEST(postselection, commuting_case_is_lueders_property) {
    Rng rng(12);
    for (int trial = 0; trial < 50; trial++) {
        // Diagonal rho and diagonal projector commute.
        const double a = rng.uniform();
        Matrix r = Matrix::Zero(3, 3);
        r(0, 0) = a;
        r(1, 1) = (1 - a) / 2;
        r(2, 2) = (1 - a) / 2;
        const DensityMatrix rho{HermitianOperator(r)};
        const auto pi = HermitianOperator::projector(basis_ket(3, static_cast<size_t>(trial) % 3));
        const auto rep = transient_state(rho, pi);
        const Matrix lueders = pi.matrix() * r * pi.matrix() / rep.probability;
        ASSERT_LT(frobenius_distance(rep.transient.matrix(), lueders), 1e-12);
        ASSERT_FALSE(rep.nonpositive());
    }
}

TEST(joint_quasi_probability, negative_example) {
    const auto rho = DensityMatrix::pure(ket(1.0, 1.0));
    const auto pi = HermitianOperator::projector(ket(1.0, 0.0));
    const auto phi = HermitianOperator::projector(ket(-0.5, std::sqrt(3.0) / 2.0));
    const double v = joint_quasi_probability(rho, pi, phi);
    EXPECT_NEAR(v, -(std::sqrt(3.0) - 1.0) / 8.0, 1e-15);
    // Re Tr{Phi Pi rho} from naive products.
    const double oracle = trace3(to_dense(phi.matrix()), to_dense(pi.matrix()), to_dense(rho.matrix()));
    EXPECT_NEAR(v, oracle, 1e-15);
}

TEST(joint_quasi_probability, marginals_and_identity_property) {
    Rng rng(51);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 30; trial++) {
            const auto rho = random_density_matrix(d, d, rng);
            const auto f = random_povm(d, 3, rng);
            const auto g = random_povm(d, 4, rng);
            const auto table = joint_quasi_probabilities(rho, f, g);
            for (size_t a = 0; a < f.size(); a++) {
                const double row = table.values.row(static_cast<Eigen::Index>(a)).sum();
                ASSERT_NEAR(row, probability(f, a, rho), 1e-12);
            }
            for (size_t b = 0; b < g.size(); b++) {
                const double col = table.values.col(static_cast<Eigen::Index>(b)).sum();
                ASSERT_NEAR(col, probability(g, b, rho), 1e-12);
            }
            // Phi = 1 gives p(f|i).
            ASSERT_NEAR(joint_quasi_probability(rho, f.element(0), HermitianOperator::identity(d)),
                        probability(f, 0, rho), 1e-12);
        }
    }
}

TEST(joint_quasi_probability, projector_with_itself) {
    Rng rng(2);
    const auto rho = random_density_matrix(3, 3, rng);
    const auto pi = HermitianOperator::projector(basis_ket(3, 1));
    EXPECT_NEAR(joint_quasi_probability(rho, pi, pi), rho.matrix()(1, 1).real(), 1e-15);
}

TEST(joint_quasi_probability, table_counts_negative_cells) {
    const auto rho = DensityMatrix::pure(ket(1.0, 1.0));
    const auto z = StrongPovm::projective(Matrix::Identity(2, 2));
    Matrix basis(2, 2);
    basis << -0.5, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.5;
    const auto tilted = StrongPovm::projective(basis);
    const auto table = joint_quasi_probabilities(rho, z, tilted);
    EXPECT_GE(table.negative_cells, 1u);
    EXPECT_EQ(table.out_of_range_cells, table.negative_cells);
    EXPECT_NEAR(table.values.sum(), 1.0, 1e-14);
}

TEST(order_independence, property) {
    Rng rng(77);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++) {
            const auto rho = random_density_matrix(d, 1 + static_cast<size_t>(trial) % d, rng);
            const auto f = random_povm(d, 2 + static_cast<size_t>(trial) % 3, rng);
            const auto g = random_povm(d, 2 + static_cast<size_t>(trial) % 4, rng);
            const auto check = order_independence_check(rho, f, g);
            ASSERT_LT(check.max_deviation(), 1e-12);
        }
    }
}

TEST(order_independence, zero_probability_branch) {
    const auto zero = DensityMatrix::pure(ket(1.0, 0.0));
    const auto z = StrongPovm::projective(Matrix::Identity(2, 2));
    const auto x = StrongPovm::projective(
        (Matrix(2, 2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0))
            .finished());
    EXPECT_LT(order_independence_check(zero, z, x).max_deviation(), 1e-14);
}

TEST(negativity, examples) {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.5, 0.0;
    const auto n = negativity(HermitianOperator(m));
    EXPECT_NEAR(n.min_eigenvalue, (1.0 - std::sqrt(2.0)) / 2.0, 1e-14);
    EXPECT_NEAR(n.negativity, (std::sqrt(2.0) - 1.0) / 2.0, 1e-14);
    EXPECT_EQ(negativity(HermitianOperator::identity(2)).negativity, 0.0);
}
