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

#include "wmtomo/tomography.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "wmtomo/error.h"

namespace wmtomo {

TomographyFrame::TomographyFrame(WeakPovmFamily family, Eigen::MatrixXd gram, std::vector<HermitianOperator> duals,
                                 size_t rank)
    : family_(std::move(family)), gram_(std::move(gram)), duals_(std::move(duals)), rank_(rank) {
    complete_ = rank_ == family_.dim() * family_.dim();
}

TomographyFrame build_frame(const WeakPovmFamily &family, double rank_tolerance) {
    const auto &s = family.frame_operators();
    const auto n = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index a = 0; a < n; a++) {
        for (Eigen::Index b = a; b < n; b++) {
            gram(a, b) = gram(b, a) = hs_inner(s[static_cast<size_t>(a)], s[static_cast<size_t>(b)]);
        }
    }

    // G is symmetric PSD, so its eigendecomposition is its SVD.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::EigenSolverFailure, "Gram matrix eigensolver did not converge");
    }
    const Eigen::VectorXd &sigma = solver.eigenvalues();
    const double cutoff = rank_tolerance * std::max(sigma.cwiseAbs().maxCoeff(), 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    size_t rank = 0;
    for (Eigen::Index k = 0; k < n; k++) {
        if (std::abs(sigma[k]) > cutoff) {
            inv[k] = 1.0 / sigma[k];
            rank++;
        }
    }
    const Eigen::MatrixXd pinv = solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();

    std::vector<HermitianOperator> duals;
    duals.reserve(s.size());
    const auto d = static_cast<Eigen::Index>(family.dim());
    for (Eigen::Index m = 0; m < n; m++) {
        Matrix acc = Matrix::Zero(d, d);
        for (Eigen::Index k = 0; k < n; k++) {
            acc += pinv(m, k) * s[static_cast<size_t>(k)].matrix();
        }
        duals.push_back(HermitianOperator::symmetrized(acc));
    }
    return TomographyFrame(family, std::move(gram), std::move(duals), rank);
}

std::vector<double> coefficients_from_probabilities(const TomographyFrame &frame, std::span<const double> probabilities,
                                                    std::vector<std::string> *warnings) {
    const WeakPovmFamily &family = frame.family();
    const double eps = family.epsilon();
    if (eps == 0.0) {
        fail(ErrorKind::StrengthZeroNotInvertible, "measurement strength 0 carries no information about the state");
    }
    if (probabilities.size() != family.size()) {
        fail(ErrorKind::DimensionMismatch, std::to_string(probabilities.size()) + " probabilities for " +
                                               std::to_string(family.size()) + " outcomes");
    }
    const double sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    const double defect = std::abs(sum - 1.0);
    if (!(defect <= kProbabilitySumLimit)) {
        fail(ErrorKind::InvalidArgument, "probabilities sum to " + std::to_string(sum));
    }
    if (defect > kProbabilitySumTolerance && warnings != nullptr) {
        std::ostringstream msg;
        msg << "probabilities sum to 1 only within " << defect;
        warnings->push_back(msg.str());
    }
    std::vector<double> c(probabilities.size());
    for (size_t m = 0; m < c.size(); m++) {
        const double w = family.baseline(m);
        c[m] = (probabilities[m] - w) / (eps * w);
    }
    return c;
}

HermitianOperator reconstruct(const TomographyFrame &frame, std::span<const double> probabilities,
                              std::vector<std::string> *warnings) {
    if (!frame.complete()) {
        const size_t d = frame.family().dim();
        fail(ErrorKind::FrameIncomplete, "frame rank " + std::to_string(frame.rank()) + " < " + std::to_string(d * d) +
                                             " (not informationally complete)");
    }
    const auto c = coefficients_from_probabilities(frame, probabilities, warnings);
    const auto d = static_cast<Eigen::Index>(frame.family().dim());
    Matrix acc = Matrix::Zero(d, d);
    for (size_t m = 0; m < c.size(); m++) {
        acc += c[m] * frame.duals()[m].matrix();
    }
    return HermitianOperator::symmetrized(acc);
}

TransientDensityMatrix reconstruct_conditional(const TomographyFrame &frame, std::span<const double> conditional,
                                               std::vector<std::string> *warnings) {
    const HermitianOperator raw = reconstruct(frame, conditional, warnings);
    const double tr = raw.trace();
    if (!(std::abs(tr - 1.0) <= 1e-6)) {
        fail(ErrorKind::BadConditionalData,
             "reconstructed conditional state has trace " + std::to_string(tr) + " (inconsistent statistics)");
    }
    return TransientDensityMatrix(raw.scaled(1.0 / tr));
}

}  // namespace wmtomo
