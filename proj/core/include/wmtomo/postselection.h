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

#ifndef WMTOMO_POSTSELECTION_H
#define WMTOMO_POSTSELECTION_H

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "wmtomo/operator.h"
#include "wmtomo/weak_povm.h"

namespace wmtomo {

/// Post-selection probabilities at or below this are treated as zero.
inline constexpr double kZeroProbability = 1e-12;

/// Statistics of the sub-ensemble selected by final outcome f.
struct PostselectionReport {
    std::string label;
    double probability;  // p(f|i) = Tr{Pi_f rho}
    TransientDensityMatrix transient;
    double min_eigenvalue;
    double negativity;

    /// The sub-ensemble is not described by a positive density matrix.
    bool nonpositive() const {
        return min_eigenvalue < -kPsdTolerance;
    }
};

/// R_if = (rho Pi_f + Pi_f rho) / (2 Tr{rho Pi_f}).
///
/// Pi_f must satisfy 0 <= Pi_f <= 1 within 1e-9. Throws
/// ZeroProbabilityPostselection if Tr{rho Pi_f} <= 1e-12.
PostselectionReport transient_state(const DensityMatrix &rho, const HermitianOperator &pi_f, std::string label = "");

struct AnticipatoryDecomposition {
    std::vector<PostselectionReport> reports;
    /// Outcomes with p(f|i) <= 1e-12; they carry no weight.
    std::vector<std::string> skipped;
    /// ||rho - sum_f p(f|i) R_if||_F.
    double residual;
};

AnticipatoryDecomposition anticipatory_decomposition(const DensityMatrix &rho, const StrongPovm &final_povm);

/// Tr{(Phi_g Pi_f + Pi_f Phi_g)/2 rho}; may be negative.
double joint_quasi_probability(const DensityMatrix &rho, const HermitianOperator &pi_f, const HermitianOperator &phi_g);

struct QuasiProbabilityTable {
    /// values(f, g).
    Eigen::MatrixXd values;
    std::vector<std::string> f_labels;
    std::vector<std::string> g_labels;
    /// Cells with value < 0.
    size_t negative_cells;
    /// Cells outside [0, 1].
    size_t out_of_range_cells;
};

QuasiProbabilityTable joint_quasi_probabilities(const DensityMatrix &rho, const StrongPovm &final_f,
                                                const StrongPovm &final_g);

struct OrderIndependence {
    /// max_{f,g} |p(f|i) Tr{Phi_g R_if} - p(g|i) Tr{Pi_f R_ig}|.
    double order_deviation;
    /// max_{f,g} |p(f|i) Tr{Phi_g R_if} - Tr{(Phi_g Pi_f + Pi_f Phi_g)/2 rho}|.
    double symmetrized_deviation;

    double max_deviation() const {
        return std::max(order_deviation, symmetrized_deviation);
    }
};

/// Compares the two post-selection orders through their transient states.
/// Where p(f|i) or p(g|i) vanishes the product p(f|i) Tr{Phi_g R_if} is
/// evaluated as Tr{Phi_g (rho Pi_f + Pi_f rho)}/2 without forming R_if.
OrderIndependence order_independence_check(const DensityMatrix &rho, const StrongPovm &final_f,
                                           const StrongPovm &final_g);

struct Negativity {
    double min_eigenvalue;
    double negativity;
};

Negativity negativity(const HermitianOperator &a);

}  // namespace wmtomo

#endif
