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

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nfpol/config.hpp"

namespace nfpol {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_numerical_error = 2,
};

/// Where a command writes. `data` receives the CSV or report, `summary`
/// receives auxiliary lines (e.g. the Malus fit) and `diag` errors and warnings.
struct OutputStreams {
    std::ostream& data;
    std::ostream& summary;
    std::ostream& diag;
};

/// Names of the available subcommands.
const std::vector<std::string>& command_names();

/// Runs one subcommand. Catches every library error and maps it to an exit
/// code; the message goes to `diag`, never into `data`.
int run_command(std::string_view name, const RunConfig& config, const OutputStreams& out);

// Individual commands; these throw instead of returning error codes.
void cmd_mode(const RunConfig& config, const OutputStreams& out);
void cmd_sweep_theta(const RunConfig& config, const OutputStreams& out);
void cmd_sweep_alpha(const RunConfig& config, const OutputStreams& out);
void cmd_theta_circ(const RunConfig& config, const OutputStreams& out);
void cmd_malus(const RunConfig& config, const OutputStreams& out);
void cmd_compensate(const RunConfig& config, const OutputStreams& out);
void cmd_poincare(const RunConfig& config, const OutputStreams& out);

}  // namespace nfpol
