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

#include "nfpol/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>

#include "nfpol/compensation.hpp"
#include "nfpol/csv.hpp"
#include "nfpol/dipole_coupling.hpp"
#include "nfpol/scatterer.hpp"

namespace nfpol {
namespace {

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

std::string fixed(double v, int decimals) {
    return to_chars_string(v, std::chars_format::fixed, decimals);
}

std::string scientific(double v) { return to_chars_string(v, std::chars_format::scientific, 3); }

void line(std::ostream& out, std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
}

ModeSolution solve(const RunConfig& config, const OutputStreams& out) {
    const ModeSolution mode = solve_he11(config.fiber);
    if (!mode.single_mode) {
        out.diag << "warning: V = " << format_number(mode.v_number)
                 << " >= 2.405, the fibre is not single-mode; reporting HE11 only\n";
    }
    return mode;
}

using Command = std::function<void(const RunConfig&, const OutputStreams&)>;

const std::vector<std::pair<std::string, Command>>& command_table() {
    static const std::vector<std::pair<std::string, Command>> table = {
        {"mode", cmd_mode},
        {"sweep-theta", cmd_sweep_theta},
        {"sweep-alpha", cmd_sweep_alpha},
        {"theta-circ", cmd_theta_circ},
        {"malus", cmd_malus},
        {"compensate", cmd_compensate},
        {"poincare", cmd_poincare},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& entry : command_table()) n.push_back(entry.first);
        return n;
    }();
    return names;
}

int run_command(std::string_view name, const RunConfig& config, const OutputStreams& out) {
    const auto& table = command_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [name](const auto& entry) { return entry.first == name; });
    if (it == table.end()) {
        out.diag << "error: unknown command '" << name << "'\n";
        return exit_config_error;
    }
    try {
        validate_config(config);
        it->second(config, out);
        out.data.flush();
        return exit_ok;
    } catch (const ConfigError& e) {
        out.diag << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        out.diag << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        out.diag << "numerical failure: " << e.what() << '\n';
        return exit_numerical_error;
    }
}

void cmd_mode(const RunConfig& config, const OutputStreams& out) {
    const ModeSolution m = solve(config, out);
    line(out.data, "beta_per_nm", format_number(m.beta));
    line(out.data, "n_eff", format_number(m.effective_index()));
    line(out.data, "h_per_nm", format_number(m.h));
    line(out.data, "q_per_nm", format_number(m.q));
    line(out.data, "s", format_number(m.s));
    line(out.data, "V", format_number(m.v_number));
    line(out.data, "single_mode", m.single_mode ? "true" : "false");
    line(out.data, "omega_rad_per_s", format_number(m.angular_frequency));
    line(out.data, "residual", scientific(m.residual));
}

void cmd_sweep_theta(const RunConfig& config, const OutputStreams& out) {
    const GridAxis grid = resolve_sweep(config, "theta", {-90.0, 90.0, 181});
    const ModeSolution m = solve(config, out);
    const std::vector<double> thetas = grid.values();
    const auto rows = stokes_vs_theta(m, config.dipole.alpha_deg, thetas, config.dipole.gap_nm,
                                      config.direction);
    CsvWriter csv(out.data, {"theta_deg", "S1", "S2", "S3", "psi_deg", "ellipticity_deg"});
    for (const auto& r : rows) {
        csv.row({r.theta_deg, r.s1, r.s2, r.s3, r.psi_deg, r.ellipticity_deg});
    }
}

void cmd_sweep_alpha(const RunConfig& config, const OutputStreams& out) {
    const GridAxis grid = resolve_sweep(config, "alpha", {-90.0, 90.0, 181});
    const ModeSolution m = solve(config, out);
    CsvWriter csv(out.data, {"alpha_deg", "psi_deg", "S3"});
    for (const double alpha : grid.values()) {
        DipolePose pose = config.dipole;
        pose.alpha_deg = alpha;
        const StokesVector s = guided_stokes(m, pose, config.direction);
        csv.row({alpha, ellipse_from_stokes(s).psi_deg, s.normalized().s3});
    }
}

void cmd_theta_circ(const RunConfig& config, const OutputStreams& out) {
    const ModeSolution m = solve(config, out);
    const ModeOverlap o = mode_overlap(m, config.dipole.dipole_radius(config.fiber));
    line(out.data, "theta_circ_deg", fixed(theta_circ_deg(o), 4));
    line(out.data, "C", format_number(o.c));
    line(out.data, "D", format_number(o.d));
    line(out.data, "D_over_C", format_number(o.d / o.c));
}

void cmd_malus(const RunConfig& config, const OutputStreams& out) {
    const GridAxis grid = resolve_sweep(config, "chi", {-90.0, 90.0, 37});
    const NanorodModel rod{Complex(1.0, 0.0), Complex(config.alpha_ratio, 0.0)};
    const std::vector<double> chis = grid.values();
    std::vector<MalusSample> samples = malus_power(rod, chis, config.chi_max_deg);
    if (config.malus_noise > 0.0) {
        apply_multiplicative_noise(samples, config.malus_noise, config.seed);
    }
    std::optional<MalusFit> fit;
    if (config.malus_fit) fit = fit_malus(samples);

    CsvWriter csv(out.data, {"chi_deg", "power_normalized"});
    for (const auto& s : samples) csv.row({s.chi_deg, s.power});
    if (fit && fit->degenerate_orientation) {
        out.summary << "chi_max_fit = undefined (no modulation)\n";
    } else if (fit) {
        out.summary << "chi_max_fit = " << format_number(fit->chi_max_deg) << '\n';
    }
}

void cmd_compensate(const RunConfig& config, const OutputStreams& out) {
    const CompensationResult r =
        compensate(random_fiber_unitary(config.seed), config.compensate_mode);
    line(out.data, "seed", std::to_string(config.seed));
    line(out.data, "mode", to_string(r.mode));
    line(out.data, "retardance_rad", format_number(r.setting.retardance_rad));
    line(out.data, "axis_deg", format_number(r.setting.axis_deg));
    if (r.setting.pre_rotation_deg) {
        line(out.data, "pre_rotation_deg", format_number(*r.setting.pre_rotation_deg));
    }
    if (r.setting.post_rotation_deg) {
        line(out.data, "post_rotation_deg", format_number(*r.setting.post_rotation_deg));
    }
    line(out.data, "residual_infidelity", scientific(r.residual_infidelity));

    if (config.compensate_trials > 1) {
        std::vector<double> residuals;
        for (int i = 0; i < config.compensate_trials; ++i) {
            const auto seed = config.seed + static_cast<std::uint64_t>(i);
            residuals.push_back(
                compensate(random_fiber_unitary(seed), config.compensate_mode).residual_infidelity);
        }
        std::sort(residuals.begin(), residuals.end());
        const double mean =
            std::accumulate(residuals.begin(), residuals.end(), 0.0) / residuals.size();
        line(out.data, "trials", std::to_string(residuals.size()));
        line(out.data, "residual_min", scientific(residuals.front()));
        line(out.data, "residual_median", scientific(residuals[residuals.size() / 2]));
        line(out.data, "residual_mean", scientific(mean));
        line(out.data, "residual_max", scientific(residuals.back()));
    }
}

void cmd_poincare(const RunConfig& config, const OutputStreams& out) {
    const ModeSolution m = solve(config, out);
    CsvWriter csv(out.data, {"alpha_deg", "theta_deg", "longitude_deg", "latitude_deg"});
    for (const double alpha : config.poincare_alpha.values()) {
        for (const double theta : config.poincare_theta.values()) {
            const PoincareMapping p = poincare_map(alpha, theta, m, config.dipole.gap_nm);
            csv.row({alpha, theta, p.point.longitude_deg, p.point.latitude_deg});
        }
    }
}

}  // namespace nfpol
