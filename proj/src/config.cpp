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

#include "nfpol/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nfpol {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw ConfigError("config: " + std::string(key) + " = '" + std::string(value) +
                      "' is not " + expected);
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
        bad_value(key, value, "a finite number");
    }
    return out;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        bad_value(key, value, "an integer");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(key, value, "a boolean");
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

Setter real(double RunConfig::*member) {
    return [member](RunConfig& c, std::string_view k, std::string_view v) {
        c.*member = parse_double(k, v);
    };
}

template <typename Field>
Setter nested(Field RunConfig::*outer, double Field::*inner) {
    return [outer, inner](RunConfig& c, std::string_view k, std::string_view v) {
        (c.*outer).*inner = parse_double(k, v);
    };
}

Setter grid_steps(GridAxis RunConfig::*axis) {
    return [axis](RunConfig& c, std::string_view k, std::string_view v) {
        (c.*axis).steps = parse_integer<int>(k, v);
    };
}

// Ordered so that config_keys() lists keys in documentation order.
const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"fiber.radius_nm", nested(&RunConfig::fiber, &FiberSpec::radius_nm)},
        {"fiber.wavelength_nm", nested(&RunConfig::fiber, &FiberSpec::wavelength_nm)},
        {"fiber.n_core", nested(&RunConfig::fiber, &FiberSpec::n_core)},
        {"fiber.n_clad", nested(&RunConfig::fiber, &FiberSpec::n_clad)},
        {"dipole.alpha_deg", nested(&RunConfig::dipole, &DipolePose::alpha_deg)},
        {"dipole.theta_deg", nested(&RunConfig::dipole, &DipolePose::theta_deg)},
        {"dipole.gap_nm", nested(&RunConfig::dipole, &DipolePose::gap_nm)},
        {"dipole.direction",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v == "+z") {
                 c.direction = Propagation::forward;
             } else if (v == "-z") {
                 c.direction = Propagation::backward;
             } else {
                 bad_value(k, v, "+z or -z");
             }
         }},
        {"sweep.variable",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v != "theta" && v != "alpha" && v != "chi") bad_value(k, v, "theta, alpha or chi");
             c.sweep.variable = std::string(v);
         }},
        {"sweep.min",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.sweep.min = parse_double(k, v); }},
        {"sweep.max",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.sweep.max = parse_double(k, v); }},
        {"sweep.steps",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             c.sweep.steps = parse_integer<int>(k, v);
         }},
        {"poincare.alpha_min", nested(&RunConfig::poincare_alpha, &GridAxis::min)},
        {"poincare.alpha_max", nested(&RunConfig::poincare_alpha, &GridAxis::max)},
        {"poincare.alpha_steps", grid_steps(&RunConfig::poincare_alpha)},
        {"poincare.theta_min", nested(&RunConfig::poincare_theta, &GridAxis::min)},
        {"poincare.theta_max", nested(&RunConfig::poincare_theta, &GridAxis::max)},
        {"poincare.theta_steps", grid_steps(&RunConfig::poincare_theta)},
        {"scatterer.alpha_ratio", real(&RunConfig::alpha_ratio)},
        {"scatterer.chi_max_deg", real(&RunConfig::chi_max_deg)},
        {"scatterer.noise", real(&RunConfig::malus_noise)},
        {"malus.fit",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.malus_fit = parse_bool(k, v); }},
        {"compensate.mode",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             try {
                 c.compensate_mode = compensation_mode_from_string(std::string(v));
             } catch (const std::invalid_argument&) {
                 bad_value(k, v, "single_berek or full");
             }
         }},
        {"compensate.trials",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             c.compensate_trials = parse_integer<int>(k, v);
         }},
        {"seed",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             c.seed = parse_integer<std::uint64_t>(k, v);
         }},
        {"output",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v.empty()) bad_value(k, v, "a path");
             c.output = std::string(v);
         }},
    };
    return table;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError("config: " + key + " " + message);
}

}  // namespace

std::vector<double> GridAxis::values() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(steps, 0)));
    for (int i = 0; i < steps; ++i) {
        out[static_cast<std::size_t>(i)] =
            i == steps - 1 ? max : min + (max - min) * static_cast<double>(i) / (steps - 1);
    }
    return out;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& entry : setters()) k.push_back(entry.first);
        return k;
    }();
    return keys;
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
    for (const auto& [name, setter] : setters()) {
        if (name == key) {
            setter(config, key, trim(value));
            return;
        }
    }
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(config, buffer.str());
}

void validate_config(const RunConfig& config) {
    try {
        config.fiber.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: fiber: ") + e.what());
    }
    try {
        config.dipole.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: dipole: ") + e.what());
    }
    if (config.sweep.steps) require(*config.sweep.steps >= 2, "sweep.steps", "must be >= 2");
    require(config.poincare_alpha.steps >= 2, "poincare.alpha_steps", "must be >= 2");
    require(config.poincare_theta.steps >= 2, "poincare.theta_steps", "must be >= 2");
    require(std::isfinite(config.alpha_ratio), "scatterer.alpha_ratio", "must be finite");
    require(config.malus_noise >= 0.0, "scatterer.noise", "must be >= 0");
    require(config.compensate_trials >= 1, "compensate.trials", "must be >= 1");
}

GridAxis resolve_sweep(const RunConfig& config, std::string_view variable, GridAxis defaults) {
    if (!config.sweep.variable.empty() && config.sweep.variable != variable) {
        throw ConfigError("config: sweep.variable = " + config.sweep.variable +
                          " does not match this command (" + std::string(variable) + ")");
    }
    GridAxis g = defaults;
    if (config.sweep.min) g.min = *config.sweep.min;
    if (config.sweep.max) g.max = *config.sweep.max;
    if (config.sweep.steps) g.steps = *config.sweep.steps;
    require(g.steps >= 2, "sweep.steps", "must be >= 2");
    require(g.max >= g.min, "sweep.max", "must not be below sweep.min");
    return g;
}

}  // namespace nfpol
