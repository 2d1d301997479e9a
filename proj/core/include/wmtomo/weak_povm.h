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

#ifndef WMTOMO_WEAK_POVM_H
#define WMTOMO_WEAK_POVM_H

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmtomo/operator.h"

namespace wmtomo {

/// Completeness tolerance for user-supplied POVMs (Frobenius norm).
inline constexpr double kCompletenessTolerance = 1e-9;

/// A POVM {F_m}: PSD elements summing to the identity, with outcome labels.
class StrongPovm {
   public:
    /// Labels default to "0", "1", ... when empty.
    explicit StrongPovm(std::vector<HermitianOperator> elements, std::vector<std::string> labels = {});

    /// Rank-1 projectors onto the columns of a unitary.
    static StrongPovm projective(const Matrix &basis, std::vector<std::string> labels = {});

    /// The one-outcome POVM {1}.
    static StrongPovm trivial(size_t dim);

    size_t dim() const noexcept {
        return elements_.front().dim();
    }
    size_t size() const noexcept {
        return elements_.size();
    }
    const HermitianOperator &element(size_t m) const;
    const std::vector<HermitianOperator> &elements() const noexcept {
        return elements_;
    }
    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }

   private:
    std::vector<HermitianOperator> elements_;
    std::vector<std::string> labels_;
};

/// Variable-strength POVM E_m(eps) = (q_m 1 + eps F_m) / (1 + eps).
///
/// In the baseline-frame parameterization E_m = w_m (1 + eps S_m) this gives
/// w_m = q_m / (1 + eps) and S_m = F_m / q_m, so that sum_m w_m = 1/(1+eps)
/// and sum_m w_m S_m = 1/(1+eps) hold identically. eps = 0 is no measurement
/// and eps -> infinity recovers {F_m}. This interpolation is one valid
/// family among many; nothing downstream depends on more than the two sum
/// constraints.
class WeakPovmFamily {
   public:
    const StrongPovm &strong() const noexcept {
        return strong_;
    }
    /// The q_m.
    const std::vector<double> &weights() const noexcept {
        return weights_;
    }
    double epsilon() const noexcept {
        return epsilon_;
    }
    size_t size() const noexcept {
        return strong_.size();
    }
    size_t dim() const noexcept {
        return strong_.dim();
    }
    const std::vector<std::string> &labels() const noexcept {
        return strong_.labels();
    }

    /// w_m = q_m / (1 + eps).
    double baseline(size_t m) const;
    /// S_m = F_m / q_m; independent of eps.
    const HermitianOperator &frame_operator(size_t m) const;
    const std::vector<HermitianOperator> &frame_operators() const noexcept {
        return frame_;
    }
    /// E_m(eps).
    const HermitianOperator &element(size_t m) const;
    const std::vector<HermitianOperator> &elements() const noexcept {
        return elements_;
    }

    /// Same strong POVM and weights at a different strength.
    WeakPovmFamily with_epsilon(double epsilon) const;

   private:
    friend WeakPovmFamily build_family(const StrongPovm &, double, std::optional<std::vector<double>>);
    WeakPovmFamily(StrongPovm strong, std::vector<double> weights, double epsilon);

    StrongPovm strong_;
    std::vector<double> weights_;
    double epsilon_;
    std::vector<HermitianOperator> frame_;
    std::vector<HermitianOperator> elements_;
};

/// Requires eps >= 0 and at least two outcomes. Without explicit weights,
/// q_m = Tr{F_m}/d (ZeroWeightOutcome if some trace vanishes). Explicit
/// weights must be positive and sum to 1 within 1e-12 (BadWeights).
WeakPovmFamily build_family(const StrongPovm &strong, double epsilon,
                            std::optional<std::vector<double>> weights = std::nullopt);

HermitianOperator element(const WeakPovmFamily &family, size_t m);

enum class MeasurementMode { Exact, Linearized };

const char *mode_name(MeasurementMode mode);

/// Kraus-type operators realizing a family. Exact: principal square roots
/// of E_m(eps). Linearized: sqrt(w_m) (1 + (eps/2) S_m), complete only to
/// first order in eps.
struct MeasurementOperatorSet {
    MeasurementMode mode;
    std::vector<Operator> operators;
    WeakPovmFamily family;
};

MeasurementOperatorSet measurement_operators(const WeakPovmFamily &family, MeasurementMode mode);

/// Re Tr{E rho}, clipped to [0, 1]. Values outside [-1e-12, 1 + 1e-12] mean E
/// is not a POVM element and throw InvalidArgument.
double probability(const HermitianOperator &element, const DensityMatrix &rho);
double probability(const WeakPovmFamily &family, size_t m, const DensityMatrix &rho);
double probability(const StrongPovm &povm, size_t m, const DensityMatrix &rho);

std::vector<double> probabilities(const WeakPovmFamily &family, const DensityMatrix &rho);
std::vector<double> probabilities(const StrongPovm &povm, const DensityMatrix &rho);

}  // namespace wmtomo

#endif
