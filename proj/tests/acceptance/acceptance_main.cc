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

// Acceptance suite. Each criterion prints one line:
//   [PASS] criterion N: <what> (<measured values>)
// Run with no arguments for all criteria, or with --criterion N for one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"
#include "wmtomo/catalog.h"
#include "wmtomo/experiments.h"
#include "wmtomo/postselection.h"
#include "wmtomo/rng.h"
#include "wmtomo/scenario_io.h"
#include "wmtomo/tomography.h"

using namespace wmtomo;
using namespace wmtomo::testing;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const std::vector<double> kEpsilonGrid{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
constexpr uint64_t kSeed = 20260101;

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(4);
    ss << x;
    return ss.str();
}

std::vector<double> exact_probabilities(const WeakPovmFamily &family, const DensityMatrix &rho) {
    std::vector<double> p;
    const Dense r = to_dense(rho.matrix());
    for (const auto &e : family.elements()) {
        p.push_back(trace(mul(to_dense(e.matrix()), r)).real());
    }
    return p;
}

Outcome criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    size_t incomplete = 0;
    Rng rng(kSeed);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++) {
            const auto rho = random_density_matrix(d, 1 + static_cast<size_t>(trial) % d, rng);
            const auto family = build_family(random_povm(d, d * d + static_cast<size_t>(trial) % 3, rng), 0.1);
            const auto frame = build_frame(family);
            if (!frame.complete()) {
                incomplete++;
                continue;
            }
            const auto est = reconstruct(frame, exact_probabilities(family, rho));
            worst = std::max(worst, trace_distance_oracle(to_dense(est.matrix()), to_dense(rho.matrix())));
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst < 1e-9 && seconds < 10.0 && incomplete == 0,
            "round-trip tomography, d in {2,3,4} x 100 states (max trace distance " + fmt(worst) + ", " +
                std::to_string(incomplete) + " incomplete frames, " + fmt(seconds) + " s)"};
}

Outcome criterion_2() {
    const Scenario s = catalog("double-slit", {.epsilon = 1e-3});
    const auto rep = transient_state(s.initial, s.final_povm.element(0), "path1");
    Dense expected{{1.0, 0.5}, {0.5, 0.0}};
    const double entry_err = max_abs_diff(to_dense(rep.transient.matrix()), expected);
    const double lo_err = std::abs(rep.min_eigenvalue - (1.0 - std::sqrt(2.0)) / 2.0);
    const bool closed_ok = entry_err < 1e-12 && std::abs(rep.probability - 0.5) < 1e-12 && lo_err < 1e-10;

    const auto dist =
        joint_distribution(s.initial, measurement_operators(s.family, MeasurementMode::Exact), s.final_povm);
    const auto summary = sample(dist, 10000000, kSeed);
    const auto est = estimate_transient(summary, build_frame(s.family), 0);
    const double td = trace_distance_oracle(to_dense(est.matrix()), expected);
    return {closed_ok && td < 0.02, "double-slit transient state (closed form max entry error " + fmt(entry_err) +
                                         ", min eigenvalue error " + fmt(lo_err) +
                                         "; sampled eps=1e-3 N=1e7 trace distance " + fmt(td) + ", need < 0.02)"};
}

Outcome criterion_3() {
    double worst = 0.0;
    Rng rng(kSeed + 3);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++) {
            const auto rho = random_density_matrix(d, 1 + static_cast<size_t>(trial) % d, rng);
            const auto povm = random_povm(d, 2 + static_cast<size_t>(trial) % 6, rng);
            const auto dec = anticipatory_decomposition(rho, povm);
            // Independent recombination from the dense oracle.
            Dense sum(d, std::vector<Cx>(d, 0.0));
            for (size_t f = 0; f < povm.size(); f++) {
                const Dense pi = to_dense(povm.element(f).matrix());
                const double p = trace(mul(pi, to_dense(rho.matrix()))).real();
                sum = add(sum, transient_oracle(to_dense(rho.matrix()), pi), p);
            }
            const Dense diff = add(to_dense(rho.matrix()), sum, -1.0);
            double fro = 0.0;
            for (const auto &row : diff) {
                for (const auto &x : row) {
                    fro += std::norm(x);
                }
            }
            worst = std::max({worst, dec.residual, std::sqrt(fro)});
        }
    }
    return {worst < 1e-10, "anticipatory decomposition residual on 3 x 100 cases (max " + fmt(worst) + ")"};
}

Outcome criterion_4() {
    double order = 0.0, marginal = 0.0;
    Rng rng(kSeed + 4);
    for (size_t d : {2, 3, 4}) {
        for (int trial = 0; trial < 100; trial++) {
            const auto rho = random_density_matrix(d, 1 + static_cast<size_t>(trial) % d, rng);
            const auto f = random_povm(d, 2 + static_cast<size_t>(trial) % 4, rng);
            const auto g = random_povm(d, 2 + static_cast<size_t>(trial) % 5, rng);
            order = std::max(order, order_independence_check(rho, f, g).max_deviation());
            const auto table = joint_quasi_probabilities(rho, f, g);
            for (size_t a = 0; a < f.size(); a++) {
                const double p = trace(mul(to_dense(f.element(a).matrix()), to_dense(rho.matrix()))).real();
                marginal = std::max(marginal, std::abs(table.values.row(static_cast<Eigen::Index>(a)).sum() - p));
            }
            for (size_t b = 0; b < g.size(); b++) {
                const double p = trace(mul(to_dense(g.element(b).matrix()), to_dense(rho.matrix()))).real();
                marginal = std::max(marginal, std::abs(table.values.col(static_cast<Eigen::Index>(b)).sum() - p));
            }
        }
    }
    return {order < 1e-10 && marginal < 1e-10, "order independence on 3 x 100 triples (max deviation " + fmt(order) +
                                                   ", max marginal error " + fmt(marginal) + ")"};
}

Outcome criterion_5() {
    const Scenario s = catalog("sic-qubit");
    const auto sweep = sweep_epsilon(s, kEpsilonGrid);
    std::vector<double> deficit;
    for (const auto &p : sweep.points) {
        deficit.push_back(p.backaction_deficit);
    }
    const double slope = loglog_slope(kEpsilonGrid, deficit);
    return {std::abs(slope - 2.0) <= 0.15, "back-action deficit slope on sic-qubit (" + fmt(slope) + ", need 2 +/- 0.15)"};
}

Outcome criterion_6() {
    const Scenario s = catalog("sic-qubit");
    const auto exact = sweep_epsilon(s, kEpsilonGrid, {.mode = MeasurementMode::Exact, .outcome = 0});
    const auto lin = sweep_epsilon(s, kEpsilonGrid, {.mode = MeasurementMode::Linearized, .outcome = 0});
    std::vector<double> err;
    for (const auto &p : exact.points) {
        err.push_back(p.error);
    }
    const double slope = loglog_slope(kEpsilonGrid, err);
    double lin_worst = 0.0;
    for (const auto &p : lin.points) {
        lin_worst = std::max(lin_worst, p.error);
    }
    return {std::abs(slope - 1.0) <= 0.15 && lin_worst < 1e-9,
            "weak-limit bias on sic-qubit (exact slope " + fmt(slope) + ", linearized max error " + fmt(lin_worst) + ")"};
}

Outcome criterion_7() {
    const StrongPovm povm = sic_qubit_povm();
    std::vector<double> dev;
    for (double eps : kEpsilonGrid) {
        const auto family = build_family(povm, eps);
        const auto exact = measurement_operators(family, MeasurementMode::Exact);
        const auto lin = measurement_operators(family, MeasurementMode::Linearized);
        double worst = 0.0;
        for (size_t m = 0; m < family.size(); m++) {
            const Dense diff = add(to_dense(exact.operators[m].matrix()), to_dense(lin.operators[m].matrix()), -1.0);
            double fro = 0.0;
            for (const auto &row : diff) {
                for (const auto &x : row) {
                    fro += std::norm(x);
                }
            }
            worst = std::max(worst, std::sqrt(fro));
        }
        dev.push_back(worst);
    }
    const double slope = loglog_slope(kEpsilonGrid, dev);
    return {std::abs(slope - 2.0) <= 0.15, "linearization error slope (" + fmt(slope) + ", need 2 +/- 0.15)"};
}

std::string serialize(const SweepResult &r) {
    std::string out;
    for (const auto &p : r.points) {
        for (double x : {p.parameter, p.error, p.backaction_deficit, p.linearization_error, p.min_eigenvalue,
                         p.negativity}) {
            out += io::format_double(x) + ",";
        }
        out += "\n";
    }
    return out + io::format_double(r.fitted_slope) + "," + io::format_double(r.fitted_intercept);
}

Outcome criterion_8() {
    const Scenario s = catalog("double-slit");
    const std::vector<uint64_t> ns{1000, 10000, 100000, 1000000};
    const auto first = sweep_samples(s, 0.1, ns, kSeed, {.outcome = 0, .replicates = 20});
    const auto replay = sweep_samples(s, 0.1, ns, kSeed, {.outcome = 0, .replicates = 20});
    const auto dist =
        joint_distribution(s.initial, measurement_operators(s.family, MeasurementMode::Exact), s.final_povm);
    const bool identical = serialize(first) == serialize(replay) &&
                           sample(dist, 100000, kSeed).counts == sample(dist, 100000, kSeed).counts;
    return {std::abs(first.fitted_slope + 0.5) <= 0.1 && identical,
            "Monte Carlo RMSE slope on double-slit (" + fmt(first.fitted_slope) + ", need -0.5 +/- 0.1; replay " +
                (identical ? "identical" : "differs") + ")"};
}

Outcome criterion_9() {
    Vector plus(2), zero(2), psi(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    zero << 1.0, 0.0;
    psi << -0.5, std::sqrt(3.0) / 2.0;
    const auto rho = DensityMatrix::pure(plus);
    const auto pi = HermitianOperator::projector(zero);
    const auto phi = HermitianOperator::projector(psi);
    const double value = joint_quasi_probability(rho, pi, phi);
    const double oracle = trace3(to_dense(phi.matrix()), to_dense(pi.matrix()), to_dense(rho.matrix()));
    const double expected = -(std::sqrt(3.0) - 1.0) / 8.0;
    const bool ok = std::abs(value - oracle) < 1e-12 && std::abs(value - expected) < 1e-12;
    return {ok, "negative joint quasi-probability (" + io::format_double(value) + ", oracle " +
                    io::format_double(oracle) + ")"};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3,
                                                         criterion_4, criterion_5, criterion_6,
                                                         criterion_7, criterion_8, criterion_9};
    std::vector<size_t> selected;
    for (int k = 1; k < argc; k++) {
        const std::string arg = argv[k];
        if (arg == "--criterion" && k + 1 < argc) {
            const int n = std::atoi(argv[++k]);
            if (n < 1 || n > static_cast<int>(criteria.size())) {
                std::cerr << "unknown criterion " << argv[k] << "\n";
                return 2;
            }
            selected.push_back(static_cast<size_t>(n));
        } else {
            std::cerr << "usage: wmtomo_acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty()) {
        for (size_t n = 1; n <= criteria.size(); n++) {
            selected.push_back(n);
        }
    }
    int failures = 0;
    for (size_t n : selected) {
        Outcome o;
        try {
            o = criteria[n - 1]();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
