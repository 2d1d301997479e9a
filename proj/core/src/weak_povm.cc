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

#include "wmtomo/weak_povm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "wmtomo/error.h"

namespace wmtomo {

namespace {

void require_index(size_t m, size_t size, const char *what) {
    if (m >= size) {
        fail(ErrorKind::IndexOutOfRange,
             std::string(what) + " index " + std::to_string(m) + " out of range [0, " + std::to_string(size) + ")");
    }
}

std::vector<std::string> default_labels(size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (size_t k = 0; k < n; k++) {
        labels.push_back(std::to_string(k));
    }
    return labels;
}

}  // namespace

StrongPovm::StrongPovm(std::vector<HermitianOperator> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) {
        fail(ErrorKind::InvalidArgument, "POVM has no elements");
    }
    if (labels_.empty()) {
        labels_ = default_labels(elements_.size());
    }
    if (labels_.size() != elements_.size()) {
        fail(ErrorKind::InvalidArgument, "POVM has " + std::to_string(elements_.size()) + " elements but " +
                                             std::to_string(labels_.size()) + " labels");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        fail(ErrorKind::InvalidArgument, "POVM outcome labels are not unique");
    }
    const size_t d = elements_.front().dim();
    Matrix total = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t m = 0; m < elements_.size(); m++) {
        require_same_dim(d, elements_[m].dim(), "POVM element");
        const double lo = min_eigenvalue(elements_[m]);
        if (lo < -kPsdTolerance) {
            fail(ErrorKind::NotPositiveSemidefinite,
                 "POVM element '" + labels_[m] + "' has eigenvalue " + std::to_string(lo));
        }
        total += elements_[m].matrix();
    }
    const double defect = frobenius_distance(total, Matrix::Identity(total.rows(), total.cols()));
    if (defect > kCompletenessTolerance) {
        fail(ErrorKind::InvalidArgument, "POVM elements sum to the identity only within " + std::to_string(defect));
    }
}

StrongPovm StrongPovm::projective(const Matrix &basis, std::vector<std::string> labels) {
    std::vector<HermitianOperator> elements;
    for (Eigen::Index k = 0; k < basis.cols(); k++) {
        elements.push_back(HermitianOperator::projector(basis.col(k)));
    }
    return StrongPovm(std::move(elements), std::move(labels));
}

StrongPovm StrongPovm::trivial(size_t dim) {
    return StrongPovm({HermitianOperator::identity(dim)}, {"1"});
}

const HermitianOperator &StrongPovm::element(size_t m) const {
    require_index(m, elements_.size(), "POVM outcome");
    return elements_[m];
}

WeakPovmFamily::WeakPovmFamily(StrongPovm strong, std::vector<double> weights, double epsilon)
    : strong_(std::move(strong)), weights_(std::move(weights)), epsilon_(epsilon) {
    const size_t d = strong_.dim();
    const HermitianOperator one = HermitianOperator::identity(d);
    frame_.reserve(strong_.size());
    elements_.reserve(strong_.size());
    for (size_t m = 0; m < strong_.size(); m++) {
        const HermitianOperator &f = strong_.element(m);
        frame_.push_back(f.scaled(1.0 / weights_[m]));
        elements_.push_back((one.scaled(weights_[m]) + f.scaled(epsilon_)).scaled(1.0 / (1.0 + epsilon_)));
    }
}

double WeakPovmFamily::baseline(size_t m) const {
    require_index(m, weights_.size(), "weak outcome");
    return weights_[m] / (1.0 + epsilon_);
}

const HermitianOperator &WeakPovmFamily::frame_operator(size_t m) const {
    require_index(m, frame_.size(), "weak outcome");
    return frame_[m];
}

const HermitianOperator &WeakPovmFamily::element(size_t m) const {
    require_index(m, elements_.size(), "weak outcome");
    return elements_[m];
}

WeakPovmFamily WeakPovmFamily::with_epsilon(double epsilon) const {
    return build_family(strong_, epsilon, weights_);
}

WeakPovmFamily build_family(const StrongPovm &strong, double epsilon, std::optional<std::vector<double>> weights) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        fail(ErrorKind::InvalidArgument, "measurement strength must be finite and >= 0, got " + std::to_string(epsilon));
    }
    if (strong.size() < 2) {
        fail(ErrorKind::InvalidArgument, "a weak measurement family needs at least two outcomes");
    }
    std::vector<double> q;
    if (weights.has_value()) {
        q = std::move(*weights);
        if (q.size() != strong.size()) {
            fail(ErrorKind::BadWeights,
                 std::to_string(q.size()) + " weights for " + std::to_string(strong.size()) + " outcomes");
        }
        for (double x : q) {
            if (!(x > 0.0)) {
                fail(ErrorKind::BadWeights, "weights must be positive, got " + std::to_string(x));
            }
        }
        const double sum = std::accumulate(q.begin(), q.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-12) {
            fail(ErrorKind::BadWeights, "weights sum to " + std::to_string(sum));
        }
    } else {
        const double d = static_cast<double>(strong.dim());
        for (size_t m = 0; m < strong.size(); m++) {
            const double tr = strong.element(m).trace();
            if (!(tr > 0.0)) {
                fail(ErrorKind::ZeroWeightOutcome, "outcome '" + strong.labels()[m] + "' has zero trace");
            }
            q.push_back(tr / d);
        }
    }
    return WeakPovmFamily(strong, std::move(q), epsilon);
}

HermitianOperator element(const WeakPovmFamily &family, size_t m) {
    return family.element(m);
}

const char *mode_name(MeasurementMode mode) {
    return mode == MeasurementMode::Exact ? "exact" : "linearized";
}

MeasurementOperatorSet measurement_operators(const WeakPovmFamily &family, MeasurementMode mode) {
    std::vector<Operator> ops;
    ops.reserve(family.size());
    const double eps = family.epsilon();
    for (size_t m = 0; m < family.size(); m++) {
        if (mode == MeasurementMode::Exact) {
            ops.push_back(sqrt_psd(family.element(m)).base());
        } else {
            const Matrix &s = family.frame_operator(m).matrix();
            const Matrix one = Matrix::Identity(s.rows(), s.cols());
            ops.emplace_back(std::sqrt(family.baseline(m)) * (one + 0.5 * eps * s));
        }
    }
    return MeasurementOperatorSet{mode, std::move(ops), family};
}

double probability(const HermitianOperator &element, const DensityMatrix &rho) {
    require_same_dim(element.dim(), rho.dim(), "probability");
    const double p = hs_inner(element, rho.hermitian());
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        fail(ErrorKind::InvalidArgument, "Tr{E rho} = " + std::to_string(p) + " is not a probability");
    }
    return std::clamp(p, 0.0, 1.0);
}

double probability(const WeakPovmFamily &family, size_t m, const DensityMatrix &rho) {
    return probability(family.element(m), rho);
}

double probability(const StrongPovm &povm, size_t m, const DensityMatrix &rho) {
    return probability(povm.element(m), rho);
}

std::vector<double> probabilities(const WeakPovmFamily &family, const DensityMatrix &rho) {
    std::vector<double> p;
    for (size_t m = 0; m < family.size(); m++) {
        p.push_back(probability(family, m, rho));
    }
    return p;
}

std::vector<double> probabilities(const StrongPovm &povm, const DensityMatrix &rho) {
    std::vector<double> p;
    for (size_t m = 0; m < povm.size(); m++) {
        p.push_back(probability(povm, m, rho));
    }
    return p;
}

}  // namespace wmtomo
