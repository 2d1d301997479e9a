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

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

#include "wmtomo/error.h"
#include "wmtomo/rng.h"

using namespace wmtomo;
using nlohmann::json;

namespace {

std::string config_message(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "expected a config error";
    return "";
}

}  // namespace

TEST(scenario_io, parse_matrix) {
    const Matrix m = io::parse_matrix(json::parse("[[[1, 0], [0, -2]], [[0, 2], [3, 0]]]"), "m");
    EXPECT_EQ(m(0, 1), Complex(0, -2));
    EXPECT_EQ(m(1, 0), Complex(0, 2));
    EXPECT_EQ(io::matrix_to_json(m), json::parse("[[[1.0, 0.0], [0.0, -2.0]], [[0.0, 2.0], [3.0, 0.0]]]"));
}

TEST(scenario_io, malformed_matrix_reports_path) {
    const auto msg = config_message(
        [] { io::parse_matrix(json::parse("[[[1, 0], [0, 0]], [[0, 0], 1]]"), "initial_state"); });
    EXPECT_NE(msg.find("initial_state[1][1]"), std::string::npos) << msg;
    const auto ragged = config_message([] { io::parse_matrix(json::parse("[[[1, 0]], [[0, 0], [1, 0]]]"), "x"); });
    EXPECT_NE(ragged.find("x[0]"), std::string::npos) << ragged;
}

TEST(scenario_io, scenario_errors_carry_paths) {
    const auto non_hermitian = config_message([] {
        io::parse_scenario(json::parse(R"({"dim": 2, "epsilon": 0.1,
            "initial_state": [[[1, 0], [1, 0]], [[0, 0], [0, 0]]],
            "weak_povm": {"catalog": "sic-qubit"}, "final_povm": {"catalog": "sic-qubit"}})"),
                           1);
    });
    EXPECT_NE(non_hermitian.find("initial_state"), std::string::npos) << non_hermitian;
    const auto unknown = config_message([] {
        io::parse_scenario(json::parse(R"({"scenario": "double-slit", "epsilon": 0.1,
            "weak_povm": {"catalog": "sic-qubit", "colour": 1}})"),
                           1);
    });
    EXPECT_NE(unknown.find("colour"), std::string::npos) << unknown;
    const auto missing_eps =
        config_message([] { io::parse_scenario(json::parse(R"({"scenario": "double-slit"})"), 1); });
    EXPECT_NE(missing_eps.find("epsilon"), std::string::npos) << missing_eps;
}

TEST(scenario_io, catalog_scenario_round_trip) {
    const Scenario s = io::parse_scenario(json::parse(R"({"scenario": "double-slit", "epsilon": 0.25})"), 1);
    EXPECT_EQ(s.name, "double-slit");
    EXPECT_EQ(s.family.epsilon(), 0.25);
    EXPECT_EQ(s.family.size(), 6u);
}

TEST(scenario_io, format_double_round_trip_property) {
    Rng rng(1);
    for (int k = 0; k < 1000; k++) {
        const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.uniform() * 40) - 20);
        EXPECT_EQ(std::stod(io::format_double(x)), x);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(io::format_double(-std::numeric_limits<double>::infinity()), "-inf");
}
