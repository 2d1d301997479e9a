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

#ifndef WMTOMO_SCENARIO_IO_H
#define WMTOMO_SCENARIO_IO_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wmtomo/catalog.h"
#include "wmtomo/operator.h"

namespace wmtomo::io {

/// Matrix literal: a list of d rows, each a list of d entries [re, im].
/// Errors are ErrorKind::Config and name `path` (e.g. "initial_state[1][0]").
Matrix parse_matrix(const nlohmann::json &value, const std::string &path);

/// Vector literal: a list of entries [re, im].
Vector parse_vector(const nlohmann::json &value, const std::string &path);

nlohmann::json matrix_to_json(const Matrix &m);

/// Shortest decimal string that reads back to the same binary64.
/// Non-finite values print as "nan", "inf", "-inf".
std::string format_double(double x);

/// Top-level keys understood by parse_scenario.
const std::vector<std::string> &scenario_keys();

/// Builds a scenario from a JSON config:
///
///   {
///     "scenario": "double-slit",             optional catalog bundle
///     "scenario_params": {"dim", "rank", "outcomes"},
///     "dim": 2,
///     "initial_state": matrix | {"pure": vector},
///     "weak_povm": {"catalog": name, params...}
///                | {"elements": [matrix...], "weights": [...], "labels": [...]},
///     "epsilon": 0.1,
///     "final_povm": {"catalog": name, params...}
///                 | {"elements": [...], "labels": [...]}
///                 | {"projectors": [vector...], "labels": [...]},
///     "second_final_povm": same forms, optional,
///     "seed": 1
///   }
///
/// Explicit parts override the parts of a "scenario" bundle. Without a
/// bundle, dim, initial_state, weak_povm and final_povm are required.
/// `seed` drives every random catalog entry. Other keys are ignored here.
Scenario parse_scenario(const nlohmann::json &config, uint64_t seed);

}  // namespace wmtomo::io

#endif
