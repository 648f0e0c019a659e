// Copyright 2026 The nfpol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nfpol: guided polarization of a linear dipole on an optical nanofibre.
//
//   nfpol <command> [--config FILE] [--<key> VALUE ...] [--output PATH]
//
// Commands: mode, sweep-theta, sweep-alpha, theta-circ, malus, compensate,
// poincare. Config keys are listed by `nfpol --help`.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nfpol/commands.hpp"
#include "nfpol/config.hpp"

namespace {

const std::map<std::string, std::string>& command_help() {
    static const std::map<std::string, std::string> help = {
        {"mode", "Solve the HE11 mode and print beta, n_eff, h, q, s, V"},
        {"sweep-theta", "CSV of the guided Stokes state versus dipole tilt"},
        {"sweep-alpha", "CSV of the ellipse orientation versus dipole azimuth"},
        {"theta-circ", "Tilt giving circular polarization, with C and D"},
        {"malus", "CSV of collected power versus excitation angle (--fit for chi_max)"},
        {"compensate", "Fit a compensator to a seeded random fibre unitary"},
        {"poincare", "CSV of Poincare coordinates over an azimuth x tilt grid"},
    };
    return help;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarization of dipole emission guided by an optical nanofibre"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    bool fit = false;
    std::map<std::string, std::optional<std::string>> overrides;
    for (const auto& key : nfpol::config_keys()) overrides[key];

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Config file with key = value lines");
        for (auto& [key, value] : overrides) {
            cmd->add_option("--" + key, value, "Override config key " + key);
        }
    };

    for (const auto& name : nfpol::command_names()) {
        CLI::App* cmd = app.add_subcommand(name, command_help().at(name));
        add_common(cmd);
        if (name == "malus") cmd->add_flag("--fit", fit, "Fit a Malus law and print chi_max_fit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? nfpol::exit_ok : nfpol::exit_config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    nfpol::RunConfig config;
    try {
        if (config_path) nfpol::apply_config_file(config, *config_path);
        for (const auto& key : nfpol::config_keys()) {
            if (const auto& value = overrides.at(key)) nfpol::set_config_value(config, key, *value);
        }
        if (fit) config.malus_fit = true;
    } catch (const nfpol::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nfpol::exit_config_error;
    }

    if (config.output == "-") {
        return nfpol::run_command(command, config, {std::cout, std::cerr, std::cerr});
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output '" << config.output << "'\n";
        return nfpol::exit_config_error;
    }
    return nfpol::run_command(command, config, {file, std::cout, std::cerr});
}
