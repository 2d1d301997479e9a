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

#include "cli/cli.h"

#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "wmtomo/error.h"
#include "wmtomo/scenario_io.h"

namespace wmtomo::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &path, const std::string &what) {
    fail(ErrorKind::Config, path + ": " + what);
}

const std::map<std::string, std::set<std::string>> &command_fields() {
    static const std::map<std::string, std::set<std::string>> fields{
        {"reconstruct", {"samples"}},
        {"postselect", {"samples"}},
        {"joint", {}},
        {"sweep", {"axis", "epsilons", "epsilon", "ns", "mode", "outcome", "samples", "replicates", "fit_range", "plot"}},
        {"sample", {"samples", "mode"}},
    };
    return fields;
}

OutputFormat parse_format(const std::string &text, const std::string &path) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    if (text == "both") {
        return OutputFormat::Both;
    }
    config_error(path, "format must be csv, json or both, got '" + text + "'");
}

}  // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"reconstruct", "postselect", "joint", "sweep", "sample"};
    return names;
}

RunConfig load_run_config(const std::string &command, const json &config, const Overrides &overrides) {
    const auto &fields = command_fields();
    if (!fields.contains(command)) {
        config_error("command", "unknown command '" + command + "'");
    }
    if (!config.is_object()) {
        config_error("$", "config must be a JSON object");
    }

    std::set<std::string> allowed(io::scenario_keys().begin(), io::scenario_keys().end());
    allowed.insert("output");
    for (const auto &[name, _] : fields) {
        allowed.insert(name);
    }
    for (const auto &[key, value] : config.items()) {
        if (!allowed.contains(key)) {
            config_error(key, "unknown field");
        }
        if (fields.contains(key)) {
            if (!value.is_object()) {
                config_error(key, "expected an object");
            }
            for (const auto &[sub, _] : value.items()) {
                if (!fields.at(key).contains(sub)) {
                    config_error(key + "." + sub, "unknown field");
                }
            }
        }
    }

    std::filesystem::path out_dir = "wmtomo-out";
    OutputFormat format = OutputFormat::Both;
    if (config.contains("output")) {
        const json &output = config.at("output");
        if (!output.is_object()) {
            config_error("output", "expected an object");
        }
        for (const auto &[key, value] : output.items()) {
            if (key == "dir" && value.is_string()) {
                out_dir = value.get<std::string>();
            } else if (key == "format" && value.is_string()) {
                format = parse_format(value.get<std::string>(), "output.format");
            } else {
                config_error("output." + key, key == "dir" || key == "format" ? "expected a string" : "unknown field");
            }
        }
    }
    out_dir = overrides.out_dir.value_or(out_dir);
    format = overrides.format.value_or(format);

    uint64_t seed = 0;
    if (overrides.seed.has_value()) {
        seed = *overrides.seed;
    } else if (config.contains("seed")) {
        if (!config.at("seed").is_number_unsigned()) {
            config_error("seed", "expected a non-negative integer");
        }
        seed = config.at("seed").get<uint64_t>();
    } else {
        config_error("seed", "missing; every run needs an explicit seed (config field or --seed)");
    }

    Scenario scenario = io::parse_scenario(config, seed);
    json params = config.value(command, json::object());
    return RunConfig{command, std::move(scenario), std::move(params), std::move(out_dir), format, seed};
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    argv.push_back(nullptr);
    return run(static_cast<int>(args.size()), const_cast<char **>(argv.data()), out, err);
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak-measurement tomography of post-selected quantum ensembles"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    uint64_t seed = 0;
    for (const auto &name : command_names()) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON scenario/config file")->required();
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
        sub->add_option("--seed", seed, "Seed (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto *sub = app.get_subcommands().front();
    try {
        std::ifstream in(config_path);
        if (!in) {
            err << "error: cannot read config file '" << config_path << "'\n";
            return kExitConfig;
        }
        json config;
        try {
            config = json::parse(in);
        } catch (const json::parse_error &e) {
            err << "error: " << config_path << ": invalid JSON: " << e.what() << "\n";
            return kExitConfig;
        }
        Overrides overrides;
        if (sub->count("--out") > 0) {
            overrides.out_dir = out_dir;
        }
        if (sub->count("--format") > 0) {
            overrides.format = parse_format(format, "--format");
        }
        if (sub->count("--seed") > 0) {
            overrides.seed = seed;
        }
        const RunConfig rc = load_run_config(command, config, overrides);
        execute(rc, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return is_precondition_violation(e.kind()) ? kExitPrecondition : kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace wmtomo::cli
