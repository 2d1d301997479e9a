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

#include <algorithm>
#include <cmath>

#include "wmtomo/error.h"

namespace wmtomo {

namespace {

void require_effect(const HermitianOperator &e, const char *what) {
    const auto lambda = eigenvalues(e);
    if (lambda.front() < -1e-9) {
        fail(ErrorKind::NotPositiveSemidefinite,
             std::string(what) + " has eigenvalue " + std::to_string(lambda.front()));
    }
    if (lambda.back() > 1.0 + 1e-9) {
        fail(ErrorKind::InvalidArgument,
             std::string(what) + " exceeds the identity (eigenvalue " + std::to_string(lambda.back()) + ")");
    }
}

Matrix anticommutator(const Matrix &a, const Matrix &b) {
    return a * b + b * a;
}

// p(f|i) Tr{Phi R_if} without dividing by p(f|i).
double unnormalized_conditional(const Matrix &rho, const Matrix &pi, const Matrix &phi) {
    return 0.5 * (phi * anticommutator(rho, pi)).trace().real();
}

}  // namespace

PostselectionReport transient_state(const DensityMatrix &rho, const HermitianOperator &pi_f, std::string label) {
    require_same_dim(rho.dim(), pi_f.dim(), "transient_state");
    require_effect(pi_f, "post-selection element");
    const double p = hs_inner(rho.hermitian(), pi_f);
    if (!(p > kZeroProbability)) {
        fail(ErrorKind::ZeroProbabilityPostselection,
             "Tr{rho Pi_f} = " + std::to_string(p) + (label.empty() ? "" : " for outcome '" + label + "'"));
    }
    const Matrix r = anticommutator(rho.matrix(), pi_f.matrix()) / (2.0 * p);
    TransientDensityMatrix transient(HermitianOperator::symmetrized(r));
    const double lo = transient.min_eigenvalue();
    const double neg = transient.negativity();
    return PostselectionReport{std::move(label), std::min(p, 1.0), std::move(transient), lo, neg};
}

AnticipatoryDecomposition anticipatory_decomposition(const DensityMatrix &rho, const StrongPovm &final_povm) {
    require_same_dim(rho.dim(), final_povm.dim(), "anticipatory_decomposition");
    AnticipatoryDecomposition out{{}, {}, 0.0};
    Matrix sum = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (size_t f = 0; f < final_povm.size(); f++) {
        const std::string &label = final_povm.labels()[f];
        if (!(hs_inner(rho.hermitian(), final_povm.element(f)) > kZeroProbability)) {
            out.skipped.push_back(label);
            continue;
        }
        out.reports.push_back(transient_state(rho, final_povm.element(f), label));
        const auto &rep = out.reports.back();
        sum += rep.probability * rep.transient.matrix();
    }
    out.residual = frobenius_distance(rho.matrix(), sum);
    return out;
}

double joint_quasi_probability(const DensityMatrix &rho, const HermitianOperator &pi_f, const HermitianOperator &phi_g) {
    require_same_dim(rho.dim(), pi_f.dim(), "joint_quasi_probability");
    require_same_dim(rho.dim(), phi_g.dim(), "joint_quasi_probability");
    require_effect(pi_f, "first element");
    require_effect(phi_g, "second element");
    const Matrix sym = 0.5 * anticommutator(phi_g.matrix(), pi_f.matrix());
    return (sym * rho.matrix()).trace().real();
}

QuasiProbabilityTable joint_quasi_probabilities(const DensityMatrix &rho, const StrongPovm &final_f,
                                                const StrongPovm &final_g) {
    QuasiProbabilityTable table{Eigen::MatrixXd(final_f.size(), final_g.size()), final_f.labels(), final_g.labels(), 0,
                                0};
    for (size_t f = 0; f < final_f.size(); f++) {
        for (size_t g = 0; g < final_g.size(); g++) {
            const double v = joint_quasi_probability(rho, final_f.element(f), final_g.element(g));
            table.values(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(g)) = v;
            if (v < 0.0) {
                table.negative_cells++;
            }
            if (v < 0.0 || v > 1.0) {
                table.out_of_range_cells++;
            }
        }
    }
    return table;
}

OrderIndependence order_independence_check(const DensityMatrix &rho, const StrongPovm &final_f,
                                           const StrongPovm &final_g) {
    require_same_dim(rho.dim(), final_f.dim(), "order_independence_check");
    require_same_dim(rho.dim(), final_g.dim(), "order_independence_check");

    // p(x|i) Tr{Y R_ix}, through the transient state when it exists.
    auto weighted_conditional = [&rho](const HermitianOperator &x, const HermitianOperator &y) {
        const double p = hs_inner(rho.hermitian(), x);
        if (p > kZeroProbability) {
            const auto rep = transient_state(rho, x);
            return rep.probability * hs_inner(y, rep.transient.hermitian());
        }
        return unnormalized_conditional(rho.matrix(), x.matrix(), y.matrix());
    };

    OrderIndependence out{0.0, 0.0};
    for (const auto &pi : final_f.elements()) {
        for (const auto &phi : final_g.elements()) {
            const double f_first = weighted_conditional(pi, phi);
            const double g_first = weighted_conditional(phi, pi);
            const double symmetric = joint_quasi_probability(rho, pi, phi);
            out.order_deviation = std::max(out.order_deviation, std::abs(f_first - g_first));
            out.symmetrized_deviation = std::max(out.symmetrized_deviation, std::abs(f_first - symmetric));
        }
    }
    return out;
}

Negativity negativity(const HermitianOperator &a) {
    const auto lambda = eigenvalues(a);
    double neg = 0.0;
    for (double l : lambda) {
        if (l < 0.0) {
            neg -= l;
        }
    }
    return Negativity{lambda.front(), neg};
}

}  // namespace wmtomo
