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

#ifndef WMTOMO_TOOLS_CLI_H
#define WMTOMO_TOOLS_CLI_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wmtomo/catalog.h"

namespace wmtomo::cli {

enum class OutputFormat { Csv, Json, Both };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitPrecondition = 2;

/// A fully validated invocation. Construction fails before any computation
/// on unknown fields, a missing seed or a malformed scenario.
struct RunConfig {
    std::string command;
    Scenario scenario;
    /// The command's own block from the config file (an empty object when
    /// absent), already checked for unknown fields.
    nlohmann::json params;
    std::filesystem::path out_dir;
    OutputFormat format;
    uint64_t seed;

    bool csv() const {
        return format != OutputFormat::Json;
    }
    bool json() const {
        return format != OutputFormat::Csv;
    }
};

struct Overrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<OutputFormat> format;
    std::optional<uint64_t> seed;
};

const std::vector<std::string> &command_names();

RunConfig load_run_config(const std::string &command, const nlohmann::json &config, const Overrides &overrides);

/// Executes the command, writing report files under out_dir and a
/// human-readable summary to `out`.
void execute(const RunConfig &config, std::ostream &out);

/// Full command line entry point; returns the process exit code
/// (0 ok, 1 configuration or IO error, 2 violated measurement precondition).
int run(int argc, char **argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wmtomo::cli

#endif
