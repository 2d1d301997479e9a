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

#include "wmtomo/scenario_io.h"

#include <charconv>
#include <cmath>
#include <optional>

#include "wmtomo/error.h"
#include "wmtomo/weak_povm.h"

namespace wmtomo::io {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &path, const std::string &what) {
    fail(ErrorKind::Config, path + ": " + what);
}

// Runs `build`, re-labelling library validation errors with the config path.
template <typename F>
auto at_path(const std::string &path, F build) -> decltype(build()) {
    try {
        return build();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Config) {
            throw;
        }
        config_error(path, e.what());
    }
}

Complex parse_entry(const json &value, const std::string &path) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        config_error(path, "expected a complex entry [re, im]");
    }
    return {value[0].get<double>(), value[1].get<double>()};
}

const json &require(const json &obj, const char *key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        config_error(path, std::string("missing required field '") + key + "'");
    }
    return obj.at(key);
}

size_t parse_size(const json &value, const std::string &path) {
    if (!value.is_number_integer() || value.get<int64_t>() < 0) {
        config_error(path, "expected a non-negative integer");
    }
    return value.get<size_t>();
}

std::vector<std::string> parse_labels(const json &obj, const std::string &path) {
    if (!obj.contains("labels")) {
        return {};
    }
    const json &labels = obj.at("labels");
    if (!labels.is_array()) {
        config_error(path + ".labels", "expected a list of strings");
    }
    std::vector<std::string> out;
    for (size_t k = 0; k < labels.size(); k++) {
        if (!labels[k].is_string()) {
            config_error(path + ".labels[" + std::to_string(k) + "]", "expected a string");
        }
        out.push_back(labels[k].get<std::string>());
    }
    return out;
}

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &path) {
    for (const auto &[key, _] : obj.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            config_error(path + "." + key, "unknown field");
        }
    }
}

CatalogParams parse_catalog_params(const json &obj, const std::string &path, double epsilon, uint64_t seed) {
    CatalogParams params;
    params.epsilon = epsilon;
    params.seed = seed;
    if (obj.is_null()) {
        return params;
    }
    if (!obj.is_object()) {
        config_error(path, "expected an object");
    }
    if (obj.contains("dim")) {
        params.dim = parse_size(obj.at("dim"), path + ".dim");
    }
    if (obj.contains("rank")) {
        params.rank = parse_size(obj.at("rank"), path + ".rank");
    }
    if (obj.contains("outcomes")) {
        params.outcomes = parse_size(obj.at("outcomes"), path + ".outcomes");
    }
    return params;
}

Scenario load_catalog(const json &name, const json &params, const std::string &path, double epsilon, uint64_t seed) {
    if (!name.is_string()) {
        config_error(path, "expected a catalog name");
    }
    const CatalogParams p = parse_catalog_params(params, path, epsilon, seed);
    return at_path(path, [&] { return catalog(name.get<std::string>(), p); });
}

enum class PovmSlot { Weak, Final, SecondFinal };

StrongPovm parse_povm(const json &obj, const std::string &path, PovmSlot slot, double epsilon, uint64_t seed,
                      std::optional<std::vector<double>> *weights) {
    if (!obj.is_object()) {
        config_error(path, "expected an object");
    }
    const std::vector<std::string> labels = parse_labels(obj, path);
    if (obj.contains("catalog")) {
        reject_unknown(obj, {"catalog", "dim", "rank", "outcomes"}, path);
        const Scenario s = load_catalog(obj.at("catalog"), obj, path + ".catalog", epsilon, seed);
        switch (slot) {
            case PovmSlot::Weak:
                *weights = s.family.weights();
                return s.family.strong();
            case PovmSlot::Final:
                return s.final_povm;
            case PovmSlot::SecondFinal:
                if (!s.second_final.has_value()) {
                    config_error(path, "catalog scenario has no second final POVM");
                }
                return *s.second_final;
        }
    }
    if (obj.contains("elements")) {
        reject_unknown(obj, {"elements", "labels", "weights"}, path);
        const json &elements = obj.at("elements");
        if (!elements.is_array() || elements.empty()) {
            config_error(path + ".elements", "expected a non-empty list of matrices");
        }
        std::vector<HermitianOperator> ops;
        for (size_t k = 0; k < elements.size(); k++) {
            const std::string p = path + ".elements[" + std::to_string(k) + "]";
            const Matrix m = parse_matrix(elements[k], p);
            ops.push_back(at_path(p, [&] { return HermitianOperator(m); }));
        }
        if (obj.contains("weights")) {
            if (slot != PovmSlot::Weak) {
                config_error(path + ".weights", "weights only apply to the weak POVM");
            }
            const json &w = obj.at("weights");
            if (!w.is_array()) {
                config_error(path + ".weights", "expected a list of reals");
            }
            std::vector<double> q;
            for (size_t k = 0; k < w.size(); k++) {
                if (!w[k].is_number()) {
                    config_error(path + ".weights[" + std::to_string(k) + "]", "expected a number");
                }
                q.push_back(w[k].get<double>());
            }
            *weights = std::move(q);
        }
        return at_path(path, [&] { return StrongPovm(std::move(ops), labels); });
    }
    if (obj.contains("projectors")) {
        reject_unknown(obj, {"projectors", "labels"}, path);
        const json &kets = obj.at("projectors");
        if (!kets.is_array() || kets.empty()) {
            config_error(path + ".projectors", "expected a non-empty list of vectors");
        }
        std::vector<HermitianOperator> ops;
        for (size_t k = 0; k < kets.size(); k++) {
            const std::string p = path + ".projectors[" + std::to_string(k) + "]";
            const Vector v = parse_vector(kets[k], p);
            ops.push_back(at_path(p, [&] { return HermitianOperator::projector(v); }));
        }
        return at_path(path, [&] { return StrongPovm(std::move(ops), labels); });
    }
    config_error(path, "expected one of 'catalog', 'elements' or 'projectors'");
}

DensityMatrix parse_state(const json &value, const std::string &path) {
    if (value.is_object()) {
        reject_unknown(value, {"pure"}, path);
        const json &ket = require(value, "pure", path);
        const Vector v = parse_vector(ket, path + ".pure");
        return at_path(path + ".pure", [&] { return DensityMatrix::pure(v); });
    }
    const Matrix m = parse_matrix(value, path);
    return at_path(path, [&] { return DensityMatrix(HermitianOperator(m)); });
}

}  // namespace

Matrix parse_matrix(const json &value, const std::string &path) {
    if (!value.is_array() || value.empty()) {
        config_error(path, "expected a matrix literal (list of rows)");
    }
    const auto d = static_cast<Eigen::Index>(value.size());
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        const json &row = value[static_cast<size_t>(r)];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            config_error(row_path, "expected a row of " + std::to_string(d) + " entries");
        }
        for (Eigen::Index c = 0; c < d; c++) {
            m(r, c) = parse_entry(row[static_cast<size_t>(c)], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

Vector parse_vector(const json &value, const std::string &path) {
    if (!value.is_array() || value.empty()) {
        config_error(path, "expected a vector literal (list of [re, im])");
    }
    Vector v(static_cast<Eigen::Index>(value.size()));
    for (size_t k = 0; k < value.size(); k++) {
        v[static_cast<Eigen::Index>(k)] = parse_entry(value[k], path + "[" + std::to_string(k) + "]");
    }
    return v;
}

json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

const std::vector<std::string> &scenario_keys() {
    static const std::vector<std::string> keys{"scenario", "scenario_params", "dim",
                                               "initial_state", "weak_povm", "epsilon",
                                               "final_povm", "second_final_povm", "seed"};
    return keys;
}

Scenario parse_scenario(const json &config, uint64_t seed) {
    if (!config.is_object()) {
        config_error("$", "config must be a JSON object");
    }
    const json &eps_value = require(config, "epsilon", "$");
    if (!eps_value.is_number()) {
        config_error("epsilon", "expected a number");
    }
    const double epsilon = eps_value.get<double>();
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        config_error("epsilon", "must be finite and >= 0");
    }

    std::optional<Scenario> base;
    if (config.contains("scenario")) {
        const json params = config.value("scenario_params", json());
        base = load_catalog(config.at("scenario"), params, "scenario", epsilon, seed);
    } else if (config.contains("scenario_params")) {
        config_error("scenario_params", "given without 'scenario'");
    }

    std::optional<size_t> dim;
    if (config.contains("dim")) {
        dim = parse_size(config.at("dim"), "dim");
        if (*dim < 2) {
            config_error("dim", "must be at least 2");
        }
    } else if (!base.has_value()) {
        config_error("$", "missing required field 'dim'");
    }
    auto check_dim = [&](size_t d, const std::string &path) {
        if (dim.has_value() && d != *dim) {
            config_error(path, "dimension " + std::to_string(d) + " does not match dim " + std::to_string(*dim));
        }
    };

    std::optional<DensityMatrix> initial;
    if (config.contains("initial_state")) {
        initial = parse_state(config.at("initial_state"), "initial_state");
    } else if (base.has_value()) {
        initial = base->initial;
    } else {
        config_error("$", "missing required field 'initial_state'");
    }
    check_dim(initial->dim(), "initial_state");

    std::optional<WeakPovmFamily> family;
    if (config.contains("weak_povm")) {
        std::optional<std::vector<double>> weights;
        const StrongPovm strong = parse_povm(config.at("weak_povm"), "weak_povm", PovmSlot::Weak, epsilon, seed, &weights);
        family = at_path("weak_povm", [&] { return build_family(strong, epsilon, weights); });
    } else if (base.has_value()) {
        family = base->family;
    } else {
        config_error("$", "missing required field 'weak_povm'");
    }
    check_dim(family->dim(), "weak_povm");

    std::optional<StrongPovm> final_povm;
    if (config.contains("final_povm")) {
        final_povm = parse_povm(config.at("final_povm"), "final_povm", PovmSlot::Final, epsilon, seed, nullptr);
    } else if (base.has_value()) {
        final_povm = base->final_povm;
    } else {
        config_error("$", "missing required field 'final_povm'");
    }
    check_dim(final_povm->dim(), "final_povm");

    std::optional<StrongPovm> second;
    if (config.contains("second_final_povm")) {
        second = parse_povm(config.at("second_final_povm"), "second_final_povm", PovmSlot::SecondFinal, epsilon, seed,
                            nullptr);
    } else if (base.has_value()) {
        second = base->second_final;
    }
    if (second.has_value()) {
        check_dim(second->dim(), "second_final_povm");
    }

    const size_t d = initial->dim();
    if (family->dim() != d || final_povm->dim() != d || (second.has_value() && second->dim() != d)) {
        config_error("$", "initial_state, weak_povm and final POVMs have different dimensions");
    }
    return Scenario{base.has_value() ? base->name : "custom", std::move(*initial), std::move(*family),
                    std::move(*final_povm), std::move(second)};
}

}  // namespace wmtomo::io
