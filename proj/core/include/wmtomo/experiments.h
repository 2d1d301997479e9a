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

#ifndef WMTOMO_EXPERIMENTS_H
#define WMTOMO_EXPERIMENTS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wmtomo/catalog.h"
#include "wmtomo/operator.h"
#include "wmtomo/tomography.h"
#include "wmtomo/weak_povm.h"

namespace wmtomo {

/// p(m, f | i) for a weak measurement m followed by a final measurement f.
struct JointDistribution {
    /// M x F, indexed (m, f).
    Eigen::MatrixXd probabilities;
    MeasurementMode mode;
    std::vector<std::string> weak_labels;
    std::vector<std::string> final_labels;
    /// Linearized mode only: some cell fell below -1e-12.
    bool has_negative_entries = false;

    size_t weak_size() const {
        return static_cast<size_t>(probabilities.rows());
    }
    size_t final_size() const {
        return static_cast<size_t>(probabilities.cols());
    }
    /// sum_m p(m, f | i).
    std::vector<double> final_marginal() const;
    /// sum_f p(m, f | i).
    std::vector<double> weak_marginal() const;
    /// p(m | i, f) = p(m, f | i) / sum_m p(m, f | i).
    std::vector<double> conditional(size_t f) const;
};

/// Exact mode: p(m,f|i) = Tr{Pi_f M_m rho M_m^dagger}; negative roundoff is
/// clipped to 0. Linearized mode: Tr{Pi_f (rho E_m + E_m rho)/2}, left
/// unclipped and flagged when negative.
JointDistribution joint_distribution(const DensityMatrix &rho, const MeasurementOperatorSet &weak,
                                     const StrongPovm &final_povm);

/// max_f |sum_m p(m,f|i) - Tr{Pi_f rho}| under the exact dynamics.
double backaction_deficit(const DensityMatrix &rho, const MeasurementOperatorSet &weak, const StrongPovm &final_povm);

/// max_m ||M_m(exact) - M_m(linearized)||_F.
double linearization_error(const WeakPovmFamily &family);

struct SampleSummary {
    /// M x F, indexed (m, f).
    Eigen::Matrix<uint64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    uint64_t total;
    uint64_t seed;
    std::vector<std::string> weak_labels;
    std::vector<std::string> final_labels;

    std::vector<double> weak_frequencies() const;
    std::vector<double> conditional_frequencies(size_t f) const;
    uint64_t final_count(size_t f) const;
};

/// n independent draws over the M x F cells (inverse CDF on row-major cell
/// order, one Rng(seed) uniform per draw). SamplingFromQuasiDistribution if
/// a cell is below -1e-12.
SampleSummary sample(const JointDistribution &dist, uint64_t n, uint64_t seed);

/// Reconstruction of R_if from the counts of column f.
/// EmptyPostselection if that column has no counts.
TransientDensityMatrix estimate_transient(const SampleSummary &summary, const TomographyFrame &frame, size_t f);

/// Full-ensemble reconstruction from the weak-outcome frequencies.
HermitianOperator estimate_state(const SampleSummary &summary, const TomographyFrame &frame);

enum class SweepAxis { Epsilon, SampleCount };

const char *axis_name(SweepAxis axis);

struct SweepPoint {
    double parameter;
    /// Trace distance to the analytic target (RMSE over replicates for
    /// sample sweeps).
    double error;
    double backaction_deficit;
    double linearization_error;
    /// Of the estimate (first replicate for sample sweeps).
    double min_eigenvalue;
    double negativity;
};

struct LinearFit {
    double slope;
    double intercept;
    size_t points;
};

/// Ordinary least squares of log10(y) on log10(x) over the pairs with x in
/// [lo, hi] and x, y > 0. NaN slope when fewer than two pairs qualify.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, std::pair<double, double> range);

struct SweepResult {
    SweepAxis axis;
    /// Sorted by parameter.
    std::vector<SweepPoint> points;
    double fitted_slope;
    double fitted_intercept;
    size_t fit_points;
    std::pair<double, double> fit_range;
};

struct EpsilonSweepOptions {
    MeasurementMode mode = MeasurementMode::Exact;
    /// Post-selected final outcome; nullopt reconstructs the full ensemble.
    std::optional<size_t> outcome = 0;
    /// 0 uses the exact probabilities; otherwise one sampled run per point.
    uint64_t samples = 0;
    uint64_t seed = 0;
    /// Defaults to the full parameter range.
    std::optional<std::pair<double, double>> fit_range;
};

/// Error of the reconstructed state against the closed-form target as a
/// function of eps. Point k samples with seed derive_seed(seed, k).
/// TooFewPoints below four points.
SweepResult sweep_epsilon(const Scenario &scenario, std::span<const double> epsilons,
                          const EpsilonSweepOptions &options = {});

struct SampleSweepOptions {
    std::optional<size_t> outcome = 0;
    size_t replicates = 20;
    std::optional<std::pair<double, double>> fit_range;
};

/// RMSE over replicates of the sampled reconstruction error as a function
/// of the sample count at fixed eps, using the exact dynamics. Replicate r
/// of point k uses seed derive_seed(derive_seed(seed, k), r).
SweepResult sweep_samples(const Scenario &scenario, double epsilon, std::span<const uint64_t> sample_counts,
                          uint64_t seed, const SampleSweepOptions &options = {});

}  // namespace wmtomo

#endif
