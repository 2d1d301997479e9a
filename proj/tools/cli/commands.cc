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

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cli/cli.h"
#include "wmtomo/error.h"
#include "wmtomo/experiments.h"
#include "wmtomo/postselection.h"
#include "wmtomo/scenario_io.h"
#include "wmtomo/tomography.h"

namespace wmtomo::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &path, const std::string &what) {
    fail(ErrorKind::Config, path + ": " + what);
}

std::string num(double x) {
    return io::format_double(x);
}

// Fixed-width rendering for the terminal tables only.
std::string pretty(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

class Csv {
   public:
    void header(std::vector<std::string> cells) {
        row(std::move(cells));
    }
    void row(std::vector<std::string> cells) {
        for (size_t k = 0; k < cells.size(); k++) {
            text_ << (k ? "," : "") << cells[k];
        }
        text_ << "\n";
    }
    std::string str() const {
        return text_.str();
    }

   private:
    std::ostringstream text_;
};

void write_file(const RunConfig &config, const std::string &name, const std::string &content) {
    std::filesystem::create_directories(config.out_dir);
    const auto path = config.out_dir / name;
    std::ofstream file(path, std::ios::binary);
    file << content;
    if (!file) {
        config_error(path.string(), "cannot write report file");
    }
}

void write_csv(const RunConfig &config, const std::string &name, const Csv &csv) {
    if (config.csv()) {
        write_file(config, name, csv.str());
    }
}

void write_json(const RunConfig &config, const std::string &name, const json &doc) {
    if (config.json()) {
        write_file(config, name, doc.dump(2) + "\n");
    }
}

void matrix_rows(Csv &csv, const Matrix &m, const std::vector<std::string> &prefix = {}) {
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            std::vector<std::string> cells = prefix;
            cells.insert(cells.end(), {std::to_string(r), std::to_string(c), num(m(r, c).real()), num(m(r, c).imag())});
            csv.row(std::move(cells));
        }
    }
}

uint64_t get_count(const json &params, const char *key, uint64_t fallback, const std::string &command) {
    if (!params.contains(key)) {
        return fallback;
    }
    if (!params.at(key).is_number_unsigned()) {
        config_error(command + "." + key, "expected a non-negative integer");
    }
    return params.at(key).get<uint64_t>();
}

MeasurementMode get_mode(const json &params, const std::string &command) {
    const std::string mode = params.value("mode", std::string("exact"));
    if (mode == "exact") {
        return MeasurementMode::Exact;
    }
    if (mode == "linearized") {
        return MeasurementMode::Linearized;
    }
    config_error(command + ".mode", "must be 'exact' or 'linearized'");
}

json base_report(const RunConfig &config) {
    return json{{"command", config.command},
                {"scenario", config.scenario.name},
                {"dim", config.scenario.initial.dim()},
                {"epsilon", config.scenario.family.epsilon()},
                {"seed", config.seed}};
}

void cmd_reconstruct(const RunConfig &config, std::ostream &out) {
    const Scenario &sc = config.scenario;
    const uint64_t samples = get_count(config.params, "samples", 0, "reconstruct");
    const TomographyFrame frame = build_frame(sc.family);
    out << "frame: " << sc.family.size() << " outcomes, rank " << frame.rank() << " of " << sc.family.dim() * sc.family.dim()
        << (frame.complete() ? " (complete)" : " (incomplete)") << "\n";

    std::vector<double> probs;
    if (samples == 0) {
        probs = probabilities(sc.family, sc.initial);
    } else {
        const auto dist = joint_distribution(sc.initial, measurement_operators(sc.family, MeasurementMode::Exact),
                                             sc.final_povm);
        probs = sample(dist, samples, config.seed).weak_frequencies();
    }
    std::vector<std::string> warnings;
    const HermitianOperator estimate = reconstruct(frame, probs, &warnings);
    const double distance = trace_distance(estimate, sc.initial.hermitian());
    const Negativity neg = negativity(estimate);

    out << "reconstructed from " << (samples == 0 ? std::string("exact probabilities") : std::to_string(samples) + " samples")
        << "\n  trace distance to true state: " << pretty(distance) << "\n  min eigenvalue: " << pretty(neg.min_eigenvalue)
        << "\n";
    for (const auto &w : warnings) {
        out << "  warning: " << w << "\n";
    }

    Csv csv;
    csv.header({"row", "col", "re", "im"});
    matrix_rows(csv, estimate.matrix());
    write_csv(config, "reconstruct.csv", csv);

    json doc = base_report(config);
    doc["samples"] = samples;
    doc["frame_rank"] = frame.rank();
    doc["complete"] = frame.complete();
    doc["probabilities"] = probs;
    doc["trace_distance"] = distance;
    doc["min_eigenvalue"] = neg.min_eigenvalue;
    doc["negativity"] = neg.negativity;
    doc["matrix"] = io::matrix_to_json(estimate.matrix());
    doc["warnings"] = warnings;
    write_json(config, "reconstruct.json", doc);
}

void cmd_postselect(const RunConfig &config, std::ostream &out) {
    const Scenario &sc = config.scenario;
    const uint64_t samples = get_count(config.params, "samples", 0, "postselect");
    const AnticipatoryDecomposition dec = anticipatory_decomposition(sc.initial, sc.final_povm);

    std::optional<SampleSummary> summary;
    std::optional<TomographyFrame> frame;
    if (samples > 0) {
        frame = build_frame(sc.family);
        const auto dist = joint_distribution(sc.initial, measurement_operators(sc.family, MeasurementMode::Exact),
                                             sc.final_povm);
        summary = sample(dist, samples, config.seed);
    }
    auto index_of = [&](const std::string &label) {
        const auto &labels = sc.final_povm.labels();
        return static_cast<size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
    };

    Csv csv;
    std::vector<std::string> head{"outcome", "probability", "min_eigenvalue", "negativity", "nonpositive"};
    if (summary) {
        head.insert(head.end(), {"postselected_counts", "estimated_min_eigenvalue", "estimated_negativity",
                                 "estimate_trace_distance"});
    }
    csv.header(head);
    Csv transients;
    transients.header({"outcome", "row", "col", "re", "im"});

    out << std::left << std::setw(12) << "outcome" << std::setw(14) << "p(f|i)" << std::setw(16) << "min eigenvalue"
        << std::setw(14) << "negativity" << (summary ? "estimate (min eig, trace dist)" : "") << "\n";
    json rows = json::array();
    for (const auto &rep : dec.reports) {
        std::vector<std::string> cells{rep.label, num(rep.probability), num(rep.min_eigenvalue), num(rep.negativity),
                                       rep.nonpositive() ? "1" : "0"};
        json row{{"outcome", rep.label},
                 {"probability", rep.probability},
                 {"min_eigenvalue", rep.min_eigenvalue},
                 {"negativity", rep.negativity},
                 {"nonpositive", rep.nonpositive()},
                 {"transient", io::matrix_to_json(rep.transient.matrix())}};
        out << std::left << std::setw(12) << rep.label << std::setw(14) << pretty(rep.probability) << std::setw(16)
            << pretty(rep.min_eigenvalue) << std::setw(14) << pretty(rep.negativity);
        if (summary) {
            const size_t f = index_of(rep.label);
            const uint64_t n_f = summary->final_count(f);
            cells.push_back(std::to_string(n_f));
            row["postselected_counts"] = n_f;
            if (n_f == 0) {
                cells.insert(cells.end(), {"nan", "nan", "nan"});
                out << "(no counts)";
            } else {
                const TransientDensityMatrix est = estimate_transient(*summary, *frame, f);
                const double dist = trace_distance(est.hermitian(), rep.transient.hermitian());
                cells.insert(cells.end(), {num(est.min_eigenvalue()), num(est.negativity()), num(dist)});
                row["estimate"] = {{"min_eigenvalue", est.min_eigenvalue()},
                                   {"negativity", est.negativity()},
                                   {"trace_distance", dist},
                                   {"matrix", io::matrix_to_json(est.matrix())}};
                out << pretty(est.min_eigenvalue()) << ", " << pretty(dist);
            }
        }
        out << "\n";
        csv.row(std::move(cells));
        matrix_rows(transients, rep.transient.matrix(), {rep.label});
        rows.push_back(std::move(row));
    }
    for (const auto &label : dec.skipped) {
        out << std::left << std::setw(12) << label << "skipped (zero probability)\n";
    }
    out << "decomposition residual: " << pretty(dec.residual) << "\n";

    write_csv(config, "postselect.csv", csv);
    write_csv(config, "postselect_transients.csv", transients);
    json doc = base_report(config);
    doc["samples"] = samples;
    doc["reports"] = std::move(rows);
    doc["skipped"] = dec.skipped;
    doc["decomposition_residual"] = dec.residual;
    write_json(config, "postselect.json", doc);
}

void cmd_joint(const RunConfig &config, std::ostream &out) {
    const Scenario &sc = config.scenario;
    if (!sc.second_final.has_value()) {
        config_error("second_final_povm", "the joint command needs a second final POVM");
    }
    const StrongPovm &g_povm = *sc.second_final;
    const QuasiProbabilityTable table = joint_quasi_probabilities(sc.initial, sc.final_povm, g_povm);
    const OrderIndependence check = order_independence_check(sc.initial, sc.final_povm, g_povm);
    const auto p_f = probabilities(sc.final_povm, sc.initial);
    const auto p_g = probabilities(g_povm, sc.initial);
    double marginal_deviation = 0.0;
    for (Eigen::Index f = 0; f < table.values.rows(); f++) {
        marginal_deviation = std::max(marginal_deviation, std::abs(table.values.row(f).sum() - p_f[static_cast<size_t>(f)]));
    }
    for (Eigen::Index g = 0; g < table.values.cols(); g++) {
        marginal_deviation = std::max(marginal_deviation, std::abs(table.values.col(g).sum() - p_g[static_cast<size_t>(g)]));
    }

    Csv csv;
    std::vector<std::string> head{"f/g"};
    head.insert(head.end(), table.g_labels.begin(), table.g_labels.end());
    csv.header(head);
    out << std::left << std::setw(10) << "f \\ g";
    for (const auto &g : table.g_labels) {
        out << std::setw(14) << g;
    }
    out << "\n";
    for (Eigen::Index f = 0; f < table.values.rows(); f++) {
        std::vector<std::string> cells{table.f_labels[static_cast<size_t>(f)]};
        out << std::setw(10) << table.f_labels[static_cast<size_t>(f)];
        for (Eigen::Index g = 0; g < table.values.cols(); g++) {
            cells.push_back(num(table.values(f, g)));
            out << std::setw(14) << pretty(table.values(f, g));
        }
        out << "\n";
        csv.row(std::move(cells));
    }
    out << "negative cells: " << table.negative_cells << "\norder-independence deviation: "
        << pretty(check.max_deviation()) << "\nmarginal deviation: " << pretty(marginal_deviation) << "\n";
    write_csv(config, "joint.csv", csv);

    json values = json::array();
    for (Eigen::Index f = 0; f < table.values.rows(); f++) {
        json row = json::array();
        for (Eigen::Index g = 0; g < table.values.cols(); g++) {
            row.push_back(table.values(f, g));
        }
        values.push_back(std::move(row));
    }
    json doc = base_report(config);
    doc["f_labels"] = table.f_labels;
    doc["g_labels"] = table.g_labels;
    doc["quasi_probabilities"] = std::move(values);
    doc["negative_cells"] = table.negative_cells;
    doc["out_of_range_cells"] = table.out_of_range_cells;
    doc["order_deviation"] = check.order_deviation;
    doc["symmetrized_deviation"] = check.symmetrized_deviation;
    doc["max_order_independence_deviation"] = check.max_deviation();
    doc["marginal_deviation"] = marginal_deviation;
    doc["p_f"] = p_f;
    doc["p_g"] = p_g;
    write_json(config, "joint.json", doc);
}

std::vector<double> get_reals(const json &params, const char *key, const std::string &path) {
    if (!params.contains(key) || !params.at(key).is_array()) {
        config_error(path, "expected a list of numbers");
    }
    std::vector<double> out;
    for (const auto &v : params.at(key)) {
        if (!v.is_number()) {
            config_error(path, "expected a list of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

void cmd_sweep(const RunConfig &config, std::ostream &out) {
    const json &p = config.params;
    const Scenario &sc = config.scenario;
    const std::string axis = p.value("axis", std::string("epsilon"));

    std::optional<size_t> outcome = 0;
    if (p.contains("outcome")) {
        if (p.at("outcome").is_null()) {
            outcome.reset();
        } else if (p.at("outcome").is_string()) {
            const auto &labels = sc.final_povm.labels();
            const auto it = std::find(labels.begin(), labels.end(), p.at("outcome").get<std::string>());
            if (it == labels.end()) {
                config_error("sweep.outcome", "no final outcome labelled " + p.at("outcome").dump());
            }
            outcome = static_cast<size_t>(it - labels.begin());
        } else {
            outcome = get_count(p, "outcome", 0, "sweep");
        }
    }
    std::optional<std::pair<double, double>> fit_range;
    if (p.contains("fit_range")) {
        const auto r = get_reals(p, "fit_range", "sweep.fit_range");
        if (r.size() != 2 || !(r[0] <= r[1])) {
            config_error("sweep.fit_range", "expected [lo, hi] with lo <= hi");
        }
        fit_range = std::make_pair(r[0], r[1]);
    }

    SweepResult result;
    if (axis == "epsilon") {
        const auto epsilons = get_reals(p, "epsilons", "sweep.epsilons");
        EpsilonSweepOptions opt;
        opt.mode = get_mode(p, "sweep");
        opt.outcome = outcome;
        opt.samples = get_count(p, "samples", 0, "sweep");
        opt.seed = config.seed;
        opt.fit_range = fit_range;
        result = sweep_epsilon(sc, epsilons, opt);
    } else if (axis == "samples") {
        if (!p.contains("ns") || !p.at("ns").is_array()) {
            config_error("sweep.ns", "expected a list of sample counts");
        }
        std::vector<uint64_t> ns;
        for (const auto &v : p.at("ns")) {
            if (!v.is_number_unsigned()) {
                config_error("sweep.ns", "expected non-negative integers");
            }
            ns.push_back(v.get<uint64_t>());
        }
        double eps = sc.family.epsilon();
        if (p.contains("epsilon")) {
            if (!p.at("epsilon").is_number()) {
                config_error("sweep.epsilon", "expected a number");
            }
            eps = p.at("epsilon").get<double>();
        }
        SampleSweepOptions opt;
        opt.outcome = outcome;
        opt.replicates = get_count(p, "replicates", 20, "sweep");
        opt.fit_range = fit_range;
        result = sweep_samples(sc, eps, ns, config.seed, opt);
    } else {
        config_error("sweep.axis", "must be 'epsilon' or 'samples'");
    }

    const char *param_name = axis_name(result.axis);
    Csv csv;
    csv.header({param_name, "error", "backaction_deficit", "linearization_error", "min_eigenvalue", "negativity"});
    out << std::left << std::setw(12) << param_name << std::setw(14) << "error" << std::setw(14) << "backaction"
        << std::setw(14) << "linearization" << "min eigenvalue\n";
    json points = json::array();
    std::ostringstream plot;
    plot << "# log10(" << param_name << ") log10(error)\n";
    for (const auto &pt : result.points) {
        csv.row({num(pt.parameter), num(pt.error), num(pt.backaction_deficit), num(pt.linearization_error),
                 num(pt.min_eigenvalue), num(pt.negativity)});
        out << std::setw(12) << pretty(pt.parameter) << std::setw(14) << pretty(pt.error) << std::setw(14)
            << pretty(pt.backaction_deficit) << std::setw(14) << pretty(pt.linearization_error)
            << pretty(pt.min_eigenvalue) << "\n";
        points.push_back({{"parameter", pt.parameter},
                          {"error", pt.error},
                          {"backaction_deficit", pt.backaction_deficit},
                          {"linearization_error", pt.linearization_error},
                          {"min_eigenvalue", pt.min_eigenvalue},
                          {"negativity", pt.negativity}});
        if (pt.parameter > 0 && pt.error > 0) {
            plot << num(std::log10(pt.parameter)) << " " << num(std::log10(pt.error)) << "\n";
        }
    }
    out << "fitted log-log slope: " << pretty(result.fitted_slope) << " over [" << pretty(result.fit_range.first) << ", "
        << pretty(result.fit_range.second) << "] (" << result.fit_points << " points)\n";
    write_csv(config, "sweep.csv", csv);

    Csv fit;
    fit.header({"axis", "slope", "intercept", "fit_lo", "fit_hi", "fit_points"});
    fit.row({param_name, num(result.fitted_slope), num(result.fitted_intercept), num(result.fit_range.first),
             num(result.fit_range.second), std::to_string(result.fit_points)});
    write_csv(config, "sweep_fit.csv", fit);
    if (p.value("plot", true)) {
        write_file(config, "sweep_plot.dat", plot.str());
    }

    json doc = base_report(config);
    doc["axis"] = param_name;
    doc["outcome"] = outcome.has_value() ? json(sc.final_povm.labels()[*outcome]) : json(nullptr);
    doc["points"] = std::move(points);
    doc["fitted_slope"] = result.fitted_slope;
    doc["fitted_intercept"] = result.fitted_intercept;
    doc["fit_range"] = {result.fit_range.first, result.fit_range.second};
    doc["fit_points"] = result.fit_points;
    write_json(config, "sweep.json", doc);
}

void cmd_sample(const RunConfig &config, std::ostream &out) {
    const Scenario &sc = config.scenario;
    if (!config.params.contains("samples")) {
        config_error("sample.samples", "missing sample count");
    }
    const uint64_t n = get_count(config.params, "samples", 0, "sample");
    const MeasurementMode mode = get_mode(config.params, "sample");
    const auto dist = joint_distribution(sc.initial, measurement_operators(sc.family, mode), sc.final_povm);
    const SampleSummary s = sample(dist, n, config.seed);

    Csv csv;
    std::vector<std::string> head{"weak/final"};
    head.insert(head.end(), s.final_labels.begin(), s.final_labels.end());
    csv.header(head);
    out << std::left << std::setw(12) << "m \\ f";
    for (const auto &f : s.final_labels) {
        out << std::setw(12) << f;
    }
    out << "\n";
    json counts = json::array();
    for (Eigen::Index m = 0; m < s.counts.rows(); m++) {
        std::vector<std::string> cells{s.weak_labels[static_cast<size_t>(m)]};
        json row = json::array();
        out << std::setw(12) << s.weak_labels[static_cast<size_t>(m)];
        for (Eigen::Index f = 0; f < s.counts.cols(); f++) {
            cells.push_back(std::to_string(s.counts(m, f)));
            row.push_back(s.counts(m, f));
            out << std::setw(12) << s.counts(m, f);
        }
        out << "\n";
        csv.row(std::move(cells));
        counts.push_back(std::move(row));
    }
    out << "total: " << s.total << "\n";
    write_csv(config, "sample.csv", csv);

    json doc = base_report(config);
    doc["mode"] = mode_name(mode);
    doc["total"] = s.total;
    doc["weak_labels"] = s.weak_labels;
    doc["final_labels"] = s.final_labels;
    doc["counts"] = std::move(counts);
    write_json(config, "sample.json", doc);
}

}  // namespace

void execute(const RunConfig &config, std::ostream &out) {
    if (config.command == "reconstruct") {
        cmd_reconstruct(config, out);
    } else if (config.command == "postselect") {
        cmd_postselect(config, out);
    } else if (config.command == "joint") {
        cmd_joint(config, out);
    } else if (config.command == "sweep") {
        cmd_sweep(config, out);
    } else if (config.command == "sample") {
        cmd_sample(config, out);
    } else {
        config_error("command", "unknown command '" + config.command + "'");
    }
}

}  // namespace wmtomo::cli
