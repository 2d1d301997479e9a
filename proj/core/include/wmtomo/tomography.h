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

#ifndef WMTOMO_TOMOGRAPHY_H
#define WMTOMO_TOMOGRAPHY_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wmtomo/operator.h"
#include "wmtomo/weak_povm.h"

namespace wmtomo {

/// Reconstruction frame of a weak family: the operators S_m, their Gram
/// matrix G[n,m] = Tr{S_n S_m} and the canonical dual operators
///     Lambda_m = sum_n (G^+)[m,n] S_n,
/// where G^+ drops singular values below rank_tolerance * sigma_max. For a
/// frame of exactly d^2 independent operators this is the usual reciprocal
/// basis, Tr{S_n Lambda_m} = delta_nm. Overcomplete frames get the
/// least-squares dual, which still satisfies sum_m Tr{S_m A} Lambda_m = A
/// for every Hermitian A.
class TomographyFrame {
   public:
    const WeakPovmFamily &family() const noexcept {
        return family_;
    }
    const Eigen::MatrixXd &gram() const noexcept {
        return gram_;
    }
    const std::vector<HermitianOperator> &duals() const noexcept {
        return duals_;
    }
    size_t rank() const noexcept {
        return rank_;
    }
    /// rank == d^2.
    bool complete() const noexcept {
        return complete_;
    }

   private:
    friend TomographyFrame build_frame(const WeakPovmFamily &, double);
    TomographyFrame(WeakPovmFamily family, Eigen::MatrixXd gram, std::vector<HermitianOperator> duals, size_t rank);

    WeakPovmFamily family_;
    Eigen::MatrixXd gram_;
    std::vector<HermitianOperator> duals_;
    size_t rank_;
    bool complete_;
};

TomographyFrame build_frame(const WeakPovmFamily &family, double rank_tolerance = 1e-8);

/// Probabilities summing to 1 within this are taken silently.
inline constexpr double kProbabilitySumTolerance = 1e-8;
/// Beyond kProbabilitySumTolerance and up to this, a warning is recorded;
/// beyond this the data is rejected.
inline constexpr double kProbabilitySumLimit = 1e-3;

/// c_m = (p(m) - w_m) / (eps w_m), the estimate of Tr{S_m rho}.
/// StrengthZeroNotInvertible if eps == 0. When `warnings` is given, a
/// normalization defect in (1e-8, 1e-3] appends a message there.
std::vector<double> coefficients_from_probabilities(const TomographyFrame &frame, std::span<const double> probabilities,
                                                    std::vector<std::string> *warnings = nullptr);

/// sum_m c_m Lambda_m, symmetrized. Not checked for positivity.
/// FrameIncomplete (with the rank) unless frame.complete().
HermitianOperator reconstruct(const TomographyFrame &frame, std::span<const double> probabilities,
                              std::vector<std::string> *warnings = nullptr);

/// Reconstruction from the conditional statistics p(m|i,f) of a
/// post-selected sub-ensemble. A trace within 1e-6 of 1 is renormalized;
/// anything further off throws BadConditionalData.
TransientDensityMatrix reconstruct_conditional(const TomographyFrame &frame, std::span<const double> conditional,
                                               std::vector<std::string> *warnings = nullptr);

}  // namespace wmtomo

#endif
