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

#include "wmtomo/catalog.h"

#include <cmath>
#include <numbers>

#include "wmtomo/error.h"
#include "wmtomo/rng.h"

namespace wmtomo {

Scenario Scenario::with_epsilon(double epsilon) const {
    return Scenario{name, initial, family.with_epsilon(epsilon), final_povm, second_final};
}

const std::vector<std::string> &catalog_names() {
    static const std::vector<std::string> names{"double-slit", "pauli6-qubit", "sic-qubit", "random"};
    return names;
}

StrongPovm pauli6_povm() {
    const auto one = HermitianOperator::identity(2);
    std::vector<HermitianOperator> elements;
    for (const auto &sigma : {pauli_x(), pauli_y(), pauli_z()}) {
        elements.push_back((one + sigma).scaled(1.0 / 6.0));
        elements.push_back((one - sigma).scaled(1.0 / 6.0));
    }
    return StrongPovm(std::move(elements), {"x+", "x-", "y+", "y-", "z+", "z-"});
}

StrongPovm sic_qubit_povm() {
    const double s = std::sqrt(2.0) / 3.0;
    const double bloch[4][3] = {
        {0.0, 0.0, 1.0},
        {2.0 * s, 0.0, -1.0 / 3.0},
        {-s, std::sqrt(2.0 / 3.0), -1.0 / 3.0},
        {-s, -std::sqrt(2.0 / 3.0), -1.0 / 3.0},
    };
    const auto one = HermitianOperator::identity(2);
    const auto x = pauli_x(), y = pauli_y(), z = pauli_z();
    std::vector<HermitianOperator> elements;
    for (const auto &r : bloch) {
        elements.push_back((one + x.scaled(r[0]) + y.scaled(r[1]) + z.scaled(r[2])).scaled(0.25));
    }
    return StrongPovm(std::move(elements), {"t0", "t1", "t2", "t3"});
}

StrongPovm random_povm(size_t dim, size_t outcomes, Rng &rng) {
    if (dim < 2 || outcomes < 1) {
        fail(ErrorKind::InvalidArgument, "random POVM needs dim >= 2 and at least one outcome");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(d, d);
    for (size_t k = 0; k < outcomes; k++) {
        Matrix g(d, d);
        for (Eigen::Index r = 0; r < d; r++) {
            for (Eigen::Index c = 0; c < d; c++) {
                g(r, c) = rng.complex_normal();
            }
        }
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const Matrix t = inverse_sqrt_pd(HermitianOperator::symmetrized(total)).matrix();
    std::vector<HermitianOperator> elements;
    for (const auto &a : raw) {
        elements.push_back(HermitianOperator::symmetrized(t * a * t));
    }
    return StrongPovm(std::move(elements));
}

DensityMatrix generic_qubit_state() {
    const double theta = std::numbers::pi / 3.0;
    const double phi = std::numbers::pi / 5.0;
    Vector ket(2);
    ket << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
    return DensityMatrix::pure(ket);
}

namespace {

StrongPovm computational_basis(std::vector<std::string> labels) {
    return StrongPovm::projective(Matrix::Identity(2, 2), std::move(labels));
}

StrongPovm hadamard_basis(std::vector<std::string> labels) {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return StrongPovm::projective(h / std::sqrt(2.0), std::move(labels));
}

}  // namespace

Scenario catalog(std::string_view name, const CatalogParams &params) {
    if (name == "double-slit") {
        Vector ket(2);
        ket << 1, 1;
        return Scenario{std::string(name), DensityMatrix::pure(ket), build_family(pauli6_povm(), params.epsilon),
                        computational_basis({"path1", "path2"}), hadamard_basis({"x+", "x-"})};
    }
    if (name == "pauli6-qubit" || name == "sic-qubit") {
        StrongPovm strong = name == "sic-qubit" ? sic_qubit_povm() : pauli6_povm();
        return Scenario{std::string(name), generic_qubit_state(), build_family(strong, params.epsilon),
                        computational_basis({"z+", "z-"}), hadamard_basis({"x+", "x-"})};
    }
    if (name == "random") {
        const size_t d = params.dim;
        if (d < 2) {
            fail(ErrorKind::InvalidArgument, "random scenario needs dim >= 2");
        }
        const size_t rank = params.rank == 0 ? d : params.rank;
        const size_t outcomes = params.outcomes == 0 ? d * d : params.outcomes;
        if (outcomes < 2) {
            fail(ErrorKind::InvalidArgument, "random scenario needs at least two weak outcomes");
        }
        Rng rng(params.seed);
        DensityMatrix rho = random_density_matrix(d, rank, rng);
        StrongPovm weak = random_povm(d, outcomes, rng);
        StrongPovm final_povm = random_povm(d, d, rng);
        StrongPovm second = random_povm(d, d, rng);
        return Scenario{"random", std::move(rho), build_family(weak, params.epsilon), std::move(final_povm),
                        std::move(second)};
    }
    fail(ErrorKind::UnknownScenario, "no catalog scenario named '" + std::string(name) + "'");
}

}  // namespace wmtomo
