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

#include "wmtomo/experiments.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "wmtomo/error.h"
#include "wmtomo/postselection.h"
#include "wmtomo/rng.h"

namespace wmtomo {

namespace {

void require_final_index(size_t f, size_t size) {
    if (f >= size) {
        fail(ErrorKind::IndexOutOfRange,
             "final outcome " + std::to_string(f) + " out of range [0, " + std::to_string(size) + ")");
    }
}

std::vector<double> normalized_column(const Eigen::VectorXd &column) {
    const double total = column.sum();
    std::vector<double> out(static_cast<size_t>(column.size()));
    for (Eigen::Index m = 0; m < column.size(); m++) {
        out[static_cast<size_t>(m)] = column[m] / total;
    }
    return out;
}

// The closed-form state an estimate is compared against.
HermitianOperator analytic_target(const Scenario &scenario, std::optional<size_t> outcome) {
    if (!outcome.has_value()) {
        return scenario.initial.hermitian();
    }
    require_final_index(*outcome, scenario.final_povm.size());
    return transient_state(scenario.initial, scenario.final_povm.element(*outcome)).transient.hermitian();
}

HermitianOperator estimate_from_distribution(const JointDistribution &dist, const TomographyFrame &frame,
                                             std::optional<size_t> outcome) {
    if (!outcome.has_value()) {
        return reconstruct(frame, dist.weak_marginal());
    }
    return reconstruct_conditional(frame, dist.conditional(*outcome)).hermitian();
}

HermitianOperator estimate_from_sample(const SampleSummary &summary, const TomographyFrame &frame,
                                       std::optional<size_t> outcome) {
    if (!outcome.has_value()) {
        return estimate_state(summary, frame);
    }
    return estimate_transient(summary, frame, *outcome).hermitian();
}

SweepResult finish_sweep(SweepAxis axis, std::vector<SweepPoint> points,
                         const std::optional<std::pair<double, double>> &fit_range) {
    std::sort(points.begin(), points.end(),
              [](const SweepPoint &a, const SweepPoint &b) { return a.parameter < b.parameter; });
    const std::pair<double, double> range =
        fit_range.value_or(std::make_pair(points.front().parameter, points.back().parameter));
    std::vector<double> x, y;
    for (const auto &p : points) {
        x.push_back(p.parameter);
        y.push_back(p.error);
    }
    const LinearFit fit = fit_loglog(x, y, range);
    return SweepResult{axis, std::move(points), fit.slope, fit.intercept, fit.points, range};
}

}  // namespace

std::vector<double> JointDistribution::final_marginal() const {
    std::vector<double> out(final_size());
    for (size_t f = 0; f < out.size(); f++) {
        out[f] = probabilities.col(static_cast<Eigen::Index>(f)).sum();
    }
    return out;
}

std::vector<double> JointDistribution::weak_marginal() const {
    std::vector<double> out(weak_size());
    for (size_t m = 0; m < out.size(); m++) {
        out[m] = probabilities.row(static_cast<Eigen::Index>(m)).sum();
    }
    return out;
}

std::vector<double> JointDistribution::conditional(size_t f) const {
    require_final_index(f, final_size());
    const Eigen::VectorXd column = probabilities.col(static_cast<Eigen::Index>(f));
    if (!(column.sum() > kZeroProbability)) {
        fail(ErrorKind::ZeroProbabilityPostselection,
             "final outcome '" + final_labels[f] + "' has probability " + std::to_string(column.sum()));
    }
    return normalized_column(column);
}

JointDistribution joint_distribution(const DensityMatrix &rho, const MeasurementOperatorSet &weak,
                                     const StrongPovm &final_povm) {
    require_same_dim(rho.dim(), weak.family.dim(), "joint_distribution");
    require_same_dim(rho.dim(), final_povm.dim(), "joint_distribution");
    const auto n_weak = static_cast<Eigen::Index>(weak.family.size());
    const auto n_final = static_cast<Eigen::Index>(final_povm.size());
    JointDistribution dist{Eigen::MatrixXd(n_weak, n_final), weak.mode, weak.family.labels(), final_povm.labels()};
    const Matrix &r = rho.matrix();
    for (Eigen::Index m = 0; m < n_weak; m++) {
        Matrix post;
        if (weak.mode == MeasurementMode::Exact) {
            const Matrix &k = weak.operators[static_cast<size_t>(m)].matrix();
            post = k * r * k.adjoint();
        } else {
            const Matrix &e = weak.family.element(static_cast<size_t>(m)).matrix();
            post = 0.5 * (r * e + e * r);
        }
        for (Eigen::Index f = 0; f < n_final; f++) {
            double p = (final_povm.element(static_cast<size_t>(f)).matrix() * post).trace().real();
            if (p < -1e-12) {
                dist.has_negative_entries = true;
            }
            if (weak.mode == MeasurementMode::Exact) {
                p = std::max(p, 0.0);
            }
            dist.probabilities(m, f) = p;
        }
    }
    return dist;
}

double backaction_deficit(const DensityMatrix &rho, const MeasurementOperatorSet &weak, const StrongPovm &final_povm) {
    const JointDistribution dist = joint_distribution(rho, weak, final_povm);
    const auto marginal = dist.final_marginal();
    double worst = 0.0;
    for (size_t f = 0; f < marginal.size(); f++) {
        const double undisturbed = hs_inner(final_povm.element(f), rho.hermitian());
        worst = std::max(worst, std::abs(marginal[f] - undisturbed));
    }
    return worst;
}

double linearization_error(const WeakPovmFamily &family) {
    const auto exact = measurement_operators(family, MeasurementMode::Exact);
    const auto linear = measurement_operators(family, MeasurementMode::Linearized);
    double worst = 0.0;
    for (size_t m = 0; m < family.size(); m++) {
        worst = std::max(worst, frobenius_distance(exact.operators[m].matrix(), linear.operators[m].matrix()));
    }
    return worst;
}

std::vector<double> SampleSummary::weak_frequencies() const {
    std::vector<double> out(static_cast<size_t>(counts.rows()));
    for (Eigen::Index m = 0; m < counts.rows(); m++) {
        out[static_cast<size_t>(m)] =
            static_cast<double>(counts.row(m).sum()) / static_cast<double>(std::max<uint64_t>(total, 1));
    }
    return out;
}

uint64_t SampleSummary::final_count(size_t f) const {
    require_final_index(f, static_cast<size_t>(counts.cols()));
    return counts.col(static_cast<Eigen::Index>(f)).sum();
}

std::vector<double> SampleSummary::conditional_frequencies(size_t f) const {
    const uint64_t n_f = final_count(f);
    if (n_f == 0) {
        fail(ErrorKind::EmptyPostselection, "no counts for final outcome '" + final_labels[f] + "'");
    }
    std::vector<double> out(static_cast<size_t>(counts.rows()));
    for (Eigen::Index m = 0; m < counts.rows(); m++) {
        out[static_cast<size_t>(m)] =
            static_cast<double>(counts(m, static_cast<Eigen::Index>(f))) / static_cast<double>(n_f);
    }
    return out;
}

SampleSummary sample(const JointDistribution &dist, uint64_t n, uint64_t seed) {
    const auto rows = dist.probabilities.rows();
    const auto cols = dist.probabilities.cols();
    std::vector<double> cumulative;
    cumulative.reserve(static_cast<size_t>(rows * cols));
    double acc = 0.0;
    size_t last_positive = 0;
    for (Eigen::Index m = 0; m < rows; m++) {
        for (Eigen::Index f = 0; f < cols; f++) {
            const double p = dist.probabilities(m, f);
            if (p < -1e-12) {
                fail(ErrorKind::SamplingFromQuasiDistribution,
                     "cell (" + dist.weak_labels[static_cast<size_t>(m)] + ", " +
                         dist.final_labels[static_cast<size_t>(f)] + ") has probability " + std::to_string(p));
            }
            if (p > 0.0) {
                acc += p;
                last_positive = cumulative.size();
            }
            cumulative.push_back(acc);
        }
    }
    SampleSummary out{Eigen::Matrix<uint64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(rows, cols), n, seed,
                      dist.weak_labels, dist.final_labels};
    if (n == 0) {
        return out;
    }
    if (!(acc > 0.0)) {
        fail(ErrorKind::InvalidArgument, "cannot sample from an all-zero distribution");
    }
    std::vector<uint64_t> tally(cumulative.size(), 0);
    Rng rng(seed);
    for (uint64_t k = 0; k < n; k++) {
        const double x = rng.uniform() * acc;
        auto idx = static_cast<size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
        tally[std::min(idx, last_positive)]++;
    }
    for (size_t cell = 0; cell < tally.size(); cell++) {
        out.counts(static_cast<Eigen::Index>(cell) / cols, static_cast<Eigen::Index>(cell) % cols) = tally[cell];
    }
    return out;
}

TransientDensityMatrix estimate_transient(const SampleSummary &summary, const TomographyFrame &frame, size_t f) {
    return reconstruct_conditional(frame, summary.conditional_frequencies(f));
}

HermitianOperator estimate_state(const SampleSummary &summary, const TomographyFrame &frame) {
    if (summary.total == 0) {
        fail(ErrorKind::EmptyPostselection, "no samples");
    }
    return reconstruct(frame, summary.weak_frequencies());
}

const char *axis_name(SweepAxis axis) {
    return axis == SweepAxis::Epsilon ? "epsilon" : "samples";
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, std::pair<double, double> range) {
    if (x.size() != y.size()) {
        fail(ErrorKind::DimensionMismatch, "fit_loglog: x and y differ in length");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (size_t k = 0; k < x.size(); k++) {
        if (x[k] < range.first || x[k] > range.second || !(x[k] > 0.0) || !(y[k] > 0.0)) {
            continue;
        }
        const double lx = std::log10(x[k]);
        const double ly = std::log10(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n++;
    }
    if (n < 2) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return LinearFit{nan, nan, n};
    }
    const double dn = static_cast<double>(n);
    const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    return LinearFit{slope, (sy - slope * sx) / dn, n};
}

SweepResult sweep_epsilon(const Scenario &scenario, std::span<const double> epsilons,
                          const EpsilonSweepOptions &options) {
    if (epsilons.size() < 4) {
        fail(ErrorKind::TooFewPoints, "an epsilon sweep needs at least 4 points, got " + std::to_string(epsilons.size()));
    }
    const HermitianOperator target = analytic_target(scenario, options.outcome);
    std::vector<SweepPoint> points;
    for (size_t k = 0; k < epsilons.size(); k++) {
        const WeakPovmFamily family = scenario.family.with_epsilon(epsilons[k]);
        const TomographyFrame frame = build_frame(family);
        const auto exact_ops = measurement_operators(family, MeasurementMode::Exact);
        const auto ops =
            options.mode == MeasurementMode::Exact ? exact_ops : measurement_operators(family, options.mode);
        const JointDistribution dist = joint_distribution(scenario.initial, ops, scenario.final_povm);

        const HermitianOperator estimate =
            options.samples == 0
                ? estimate_from_distribution(dist, frame, options.outcome)
                : estimate_from_sample(sample(dist, options.samples, derive_seed(options.seed, k)), frame,
                                       options.outcome);
        const Negativity neg = negativity(estimate);
        points.push_back(SweepPoint{epsilons[k], trace_distance(estimate, target),
                                    backaction_deficit(scenario.initial, exact_ops, scenario.final_povm),
                                    linearization_error(family), neg.min_eigenvalue, neg.negativity});
    }
    return finish_sweep(SweepAxis::Epsilon, std::move(points), options.fit_range);
}

SweepResult sweep_samples(const Scenario &scenario, double epsilon, std::span<const uint64_t> sample_counts,
                          uint64_t seed, const SampleSweepOptions &options) {
    if (sample_counts.size() < 4) {
        fail(ErrorKind::TooFewPoints,
             "a sample-count sweep needs at least 4 points, got " + std::to_string(sample_counts.size()));
    }
    if (options.replicates < 1) {
        fail(ErrorKind::InvalidArgument, "a sample-count sweep needs at least one replicate");
    }
    const HermitianOperator target = analytic_target(scenario, options.outcome);
    const WeakPovmFamily family = scenario.family.with_epsilon(epsilon);
    const TomographyFrame frame = build_frame(family);
    const auto exact_ops = measurement_operators(family, MeasurementMode::Exact);
    const JointDistribution dist = joint_distribution(scenario.initial, exact_ops, scenario.final_povm);
    const double deficit = backaction_deficit(scenario.initial, exact_ops, scenario.final_povm);
    const double lin_error = linearization_error(family);

    // Points only share immutable inputs; each derives its own seed, so the
    // result does not depend on scheduling.
    auto run_point = [&](size_t k) {
        const uint64_t point_seed = derive_seed(seed, k);
        double sum_sq = 0.0;
        Negativity first{0.0, 0.0};
        for (size_t r = 0; r < options.replicates; r++) {
            const SampleSummary s = sample(dist, sample_counts[k], derive_seed(point_seed, r));
            const HermitianOperator estimate = estimate_from_sample(s, frame, options.outcome);
            const double e = trace_distance(estimate, target);
            sum_sq += e * e;
            if (r == 0) {
                first = negativity(estimate);
            }
        }
        return SweepPoint{static_cast<double>(sample_counts[k]),
                          std::sqrt(sum_sq / static_cast<double>(options.replicates)), deficit, lin_error,
                          first.min_eigenvalue, first.negativity};
    };
    std::vector<std::future<SweepPoint>> pending;
    for (size_t k = 0; k < sample_counts.size(); k++) {
        pending.push_back(std::async(std::launch::async, run_point, k));
    }
    std::vector<SweepPoint> points;
    for (auto &p : pending) {
        points.push_back(p.get());
    }
    return finish_sweep(SweepAxis::SampleCount, std::move(points), options.fit_range);
}

}  // namespace wmtomo
