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

// Run configuration for the command-line tool.
//
// File format: one `key = value` per line, keys with section dots
// (`fiber.radius_nm = 152.5`). `#` starts a comment. Angles are in degrees
// and lengths in nm. Every key can also be given as `--key value`.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nfpol/compensation.hpp"
#include "nfpol/dipole_coupling.hpp"
#include "nfpol/fiber_mode.hpp"

namespace nfpol {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::string variable;  ///< empty: implied by the subcommand
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> steps;
};

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int steps = 2;

    /// `steps` equally spaced values from min to max inclusive.
    std::vector<double> values() const;
};

struct RunConfig {
    FiberSpec fiber = nanorod_experiment_fiber();
    DipolePose dipole;
    Propagation direction = Propagation::forward;
    SweepConfig sweep;
    GridAxis poincare_alpha{-90.0, 90.0, 7};
    GridAxis poincare_theta{-45.0, 45.0, 7};
    double alpha_ratio = 0.1;  ///< alpha_T / alpha_L, real
    double chi_max_deg = 0.0;
    double malus_noise = 0.0;  ///< relative sigma of multiplicative noise
    bool malus_fit = false;
    CompensationMode compensate_mode = CompensationMode::single_berek;
    int compensate_trials = 1;
    std::uint64_t seed = 1;
    std::string output = "-";  ///< "-" is standard output
};

/// Every key accepted in a config file, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one key. Throws ConfigError for an unknown key or malformed value.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Applies every `key = value` line of `text` on top of `config`.
void apply_config_text(RunConfig& config, std::string_view text);

/// Reads and applies a config file.
void apply_config_file(RunConfig& config, const std::string& path);

/// Checks physical ranges; throws ConfigError with the offending key.
void validate_config(const RunConfig& config);

/// Resolves the sweep grid, falling back to the command's defaults.
GridAxis resolve_sweep(const RunConfig& config, std::string_view variable, GridAxis defaults);

}  // namespace nfpol
