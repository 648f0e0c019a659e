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

#include <cstdio>
#include <fstream>
#include <locale>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nfpol/commands.hpp"
#include "nfpol/config.hpp"
#include "nfpol/csv.hpp"

using namespace nfpol;

namespace {

struct Run {
    int code;
    std::string data;
    std::string summary;
    std::string diag;
};

Run run(const std::string& command, const RunConfig& config) {
    std::ostringstream data;
    std::ostringstream summary;
    std::ostringstream diag;
    const int code = run_command(command, config, {data, summary, diag});
    return {code, data.str(), summary.str(), diag.str()};
}

RunConfig from_text(const std::string& text) {
    RunConfig c;
    apply_config_text(c, text);
    return c;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> column(const std::string& csv, int index) {
    std::vector<double> out;
    const auto rows = lines(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream cells(rows[i]);
        std::string cell;
        for (int k = 0; k <= index; ++k) std::getline(cells, cell, ',');
        out.push_back(std::stod(cell));
    }
    return out;
}

struct CommaDecimal : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
    char do_thousands_sep() const override { return '.'; }
    std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(43.0) == "43");
    CHECK(format_number(123456789012.0) == "1.23456789e+11");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1.0 / 3.0, 4) == "0.3333");
}

TEST_CASE("CSV writer") {
    std::ostringstream out;
    out.imbue(std::locale(std::locale::classic(), new CommaDecimal));
    CsvWriter csv(out, {"a", "b"});
    csv.row({1234.5, -0.25});
    CHECK(out.str() == "a,b\n1234.5,-0.25\n");
    CHECK_THROWS_AS(csv.row({1.0}), std::logic_error);
}

TEST_CASE("config text") {
    const RunConfig c = from_text(
        "# experiment fibre\n"
        "fiber.radius_nm = 150   # trailing comment\n"
        "  dipole.theta_deg=20\n"
        "\n"
        "dipole.direction = -z\n"
        "sweep.variable = theta\n"
        "sweep.steps = 5\n"
        "compensate.mode = full\n"
        "seed = 42\n");
    CHECK(c.fiber.radius_nm == 150.0);
    CHECK(c.dipole.theta_deg == 20.0);
    CHECK(c.direction == Propagation::backward);
    CHECK(c.sweep.variable == "theta");
    CHECK(c.sweep.steps == 5);
    CHECK(c.compensate_mode == CompensationMode::full);
    CHECK(c.seed == 42u);
    CHECK(c.fiber.wavelength_nm == 637.0);

    RunConfig d;
    CHECK_THROWS_AS(apply_config_text(d, "fiber.radius = 3\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(d, "fiber.radius_nm = abc\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(d, "fiber.radius_nm = 12x\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(d, "fiber.radius_nm 150\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(d, "sweep.steps = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(d, "dipole.direction = up\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(d, "/nonexistent/nfpol.cfg"), ConfigError);

    // Every documented key is accepted by the parser.
    for (const auto& key : config_keys()) CHECK(!key.empty());
    CHECK(config_keys().size() >= 20);
}

TEST_CASE("config file") {
    const std::string path = "nfpol_test_config.cfg";
    {
        std::ofstream f(path);
        f << "fiber.wavelength_nm = 780\ndipole.gap_nm = 0\n";
    }
    RunConfig c;
    apply_config_file(c, path);
    std::remove(path.c_str());
    CHECK(c.fiber.wavelength_nm == 780.0);
    CHECK(c.dipole.gap_nm == 0.0);
}

TEST_CASE("mode report") {
    const Run r = run("mode", RunConfig{});
    CHECK(r.code == exit_ok);
    CHECK(r.diag.empty());
    for (const char* key : {"beta_per_nm", "n_eff", "h_per_nm", "q_per_nm", "s", "V",
                            "single_mode", "omega_rad_per_s", "residual"}) {
        CHECK(r.data.find(std::string(key) + " = ") != std::string::npos);
    }
    CHECK(r.data.find("single_mode = true") != std::string::npos);
    CHECK(r.data.find("n_eff = 1.0768") != std::string::npos);

    RunConfig thick;
    thick.fiber.radius_nm = 400.0;
    const Run w = run("mode", thick);
    CHECK(w.code == exit_ok);
    CHECK(w.data.find("single_mode = false") != std::string::npos);
    CHECK(w.diag.find("warning") != std::string::npos);
}

TEST_CASE("theta-circ report") {
    const Run r = run("theta-circ", RunConfig{});
    CHECK(r.code == exit_ok);
    CHECK(std::regex_search(r.data, std::regex("^theta_circ_deg = 4[234]\\.[0-9]{4}\n")));
    CHECK(r.data.find("\nC = ") != std::string::npos);
    CHECK(r.data.find("\nD = ") != std::string::npos);
    CHECK(r.data.find("\nD_over_C = ") != std::string::npos);
}

TEST_CASE("theta sweep CSV") {
    RunConfig c = from_text("sweep.min = -90\nsweep.max = 90\nsweep.steps = 19\n");
    const Run r = run("sweep-theta", c);
    CHECK(r.code == exit_ok);
    const auto rows = lines(r.data);
    REQUIRE(rows.size() == 20);
    CHECK(rows[0] == "theta_deg,S1,S2,S3,psi_deg,ellipticity_deg");
    CHECK(r.data.find('\r') == std::string::npos);
    CHECK(r.data.back() == '\n');
    const auto theta = column(r.data, 0);
    for (std::size_t i = 1; i < theta.size(); ++i) CHECK(theta[i] > theta[i - 1]);
    const auto s3 = column(r.data, 3);
    CHECK(s3[9] == 0.0);
    CHECK(s3[10] > 0.0);

    // Every cell has at most 9 significant digits.
    const std::regex cell("^-?[0-9]\\.?[0-9]*(e[-+][0-9]+)?$|^-?0\\.0*[0-9]{1,9}(e[-+][0-9]+)?$|^-?[0-9]+(\\.[0-9]+)?$");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream cells(rows[i]);
        for (std::string v; std::getline(cells, v, ',');) {
            std::string digits;
            bool leading = true;
            for (char ch : v.substr(0, v.find('e'))) {
                if (ch < '0' || ch > '9') continue;
                if (leading && ch == '0') continue;
                leading = false;
                digits += ch;
            }
            CHECK(digits.size() <= 9);
            CHECK(std::regex_match(v, cell));
        }
    }

    // Default grid: 181 rows from -90 to 90.
    CHECK(lines(run("sweep-theta", RunConfig{}).data).size() == 182);
}

TEST_CASE("deterministic output") {
    RunConfig c = from_text("dipole.alpha_deg = 30\nsweep.steps = 37\n");
    CHECK(run("sweep-theta", c).data == run("sweep-theta", c).data);
    RunConfig m = from_text("scatterer.noise = 0.05\nseed = 9\nmalus.fit = true\n");
    const Run a = run("malus", m);
    const Run b = run("malus", m);
    CHECK(a.data == b.data);
    CHECK(a.summary == b.summary);
    m.seed = 10;
    CHECK(run("malus", m).data != a.data);
}

TEST_CASE("alpha sweep CSV") {
    RunConfig c = from_text("sweep.variable = alpha\nsweep.min = -80\nsweep.max = 80\nsweep.steps = 17\n");
    const Run r = run("sweep-alpha", c);
    CHECK(r.code == exit_ok);
    CHECK(lines(r.data)[0] == "alpha_deg,psi_deg,S3");
    const auto alpha = column(r.data, 0);
    const auto psi = column(r.data, 1);
    for (std::size_t i = 0; i < alpha.size(); ++i) CHECK(std::abs(psi[i] - alpha[i]) < 1e-6);
}

TEST_CASE("Malus CSV and fit summary") {
    RunConfig c = from_text("scatterer.chi_max_deg = 30\n");
    Run r = run("malus", c);
    CHECK(r.code == exit_ok);
    CHECK(lines(r.data)[0] == "chi_deg,power_normalized");
    CHECK(lines(r.data).size() == 38);
    CHECK(r.summary.empty());

    c.malus_fit = true;
    r = run("malus", c);
    CHECK(r.summary == "chi_max_fit = 30\n");
    CHECK(r.data.find("chi_max_fit") == std::string::npos);

    c.sweep.min = 0.0;
    c.sweep.max = 40.0;
    c.sweep.steps = 9;
    r = run("malus", c);
    CHECK(r.code == exit_config_error);
    CHECK(r.data.empty());
    CHECK(!r.diag.empty());
}

TEST_CASE("compensate report") {
    RunConfig c = from_text("seed = 7\ncompensate.mode = full\n");
    Run r = run("compensate", c);
    CHECK(r.code == exit_ok);
    CHECK(r.data.find("seed = 7\n") != std::string::npos);
    CHECK(r.data.find("mode = full\n") != std::string::npos);
    CHECK(r.data.find("pre_rotation_deg = ") != std::string::npos);
    CHECK(std::regex_search(r.data, std::regex("residual_infidelity = [0-9]\\.[0-9]{3}e-[0-9]+\n")));

    c.compensate_mode = CompensationMode::single_berek;
    c.compensate_trials = 5;
    r = run("compensate", c);
    CHECK(r.data.find("pre_rotation_deg") == std::string::npos);
    CHECK(r.data.find("trials = 5\n") != std::string::npos);
    CHECK(r.data.find("residual_median = ") != std::string::npos);
}

TEST_CASE("Poincare CSV") {
    const Run r = run("poincare", RunConfig{});
    CHECK(r.code == exit_ok);
    const auto rows = lines(r.data);
    CHECK(rows[0] == "alpha_deg,theta_deg,longitude_deg,latitude_deg");
    CHECK(rows.size() == 1 + 7 * 7);
}

TEST_CASE("exit codes") {
    RunConfig bad;
    bad.fiber.radius_nm = 5.0;
    Run r = run("mode", bad);
    CHECK(r.code == exit_config_error);
    CHECK(r.data.empty());
    CHECK(r.diag.find("error") != std::string::npos);

    RunConfig steps = from_text("sweep.steps = 1\n");
    CHECK(run("sweep-theta", steps).code == exit_config_error);

    RunConfig mismatch = from_text("sweep.variable = alpha\n");
    CHECK(run("sweep-theta", mismatch).code == exit_config_error);

    RunConfig pose = from_text("dipole.alpha_deg = 120\n");
    CHECK(run("sweep-theta", pose).code == exit_config_error);

    CHECK(run("no-such-command", RunConfig{}).code == exit_config_error);

    // Valid but so weakly guiding that no root lies above the scan floor.
    RunConfig weak = from_text(
        "fiber.radius_nm = 10\nfiber.wavelength_nm = 10000\nfiber.n_core = 1.001\n");
    r = run("mode", weak);
    CHECK(r.code == exit_numerical_error);
    CHECK(r.data.empty());
    CHECK(r.diag.find("residual signs") != std::string::npos);
}

TEST_CASE("command names") {
    const std::vector<std::string> expected{"mode",   "sweep-theta", "sweep-alpha", "theta-circ",
                                            "malus", "compensate",  "poincare"};
    CHECK(command_names() == expected);
}
