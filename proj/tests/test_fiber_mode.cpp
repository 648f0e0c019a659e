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

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "nfpol/fiber_mode.hpp"
#include "nfpol/special_functions.hpp"
#include "support/generators.hpp"

using namespace nfpol;

namespace {

const ModeSolution& experiment_mode() {
    static const ModeSolution m = solve_he11(nanorod_experiment_fiber());
    return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("V number") {
    const FiberSpec s = nanorod_experiment_fiber();
    const double direct = 2.0 * pi * 152.5 / 637.0 * std::sqrt(1.457 * 1.457 - 1.0);
    CHECK(rel(v_number(s), direct) < 1e-14);
    CHECK(std::abs(v_number(s) - 1.595) < 2e-3);

    FiberSpec thin = s;
    thin.radius_nm = 1e-9;
    CHECK(v_number(thin) < 1e-10);

    FiberSpec flat = s;
    flat.n_core = flat.n_clad;
    CHECK(v_number(flat) == 0.0);
}

TEST_CASE("experiment fibre solution") {
    const ModeSolution& m = experiment_mode();
    CHECK(m.effective_index() > 1.0);
    CHECK(m.effective_index() < 1.457);
    CHECK(std::abs(m.residual) < 1e-10);
    CHECK(std::abs(he11_residual(m.spec, m.effective_index())) < 1e-10);
    CHECK(m.single_mode);
    CHECK(m.v_number == v_number(m.spec));
    CHECK(m.k == doctest::Approx(2.0 * pi / 637.0).epsilon(1e-15));
    CHECK(m.angular_frequency == doctest::Approx(speed_of_light_nm_per_s * m.k).epsilon(1e-15));

    // u^2 + w^2 = V^2 ties h, q and beta together.
    const double a = m.spec.radius_nm;
    const double u = m.h * a;
    const double w = m.q * a;
    CHECK(rel(u * u + w * w, m.v_number * m.v_number) < 1e-12);
    CHECK(rel(m.h * m.h + m.beta * m.beta, 1.457 * 1.457 * m.k * m.k) < 1e-12);

    // s from its defining expression.
    using special::bessel_j;
    using special::bessel_j_prime;
    using special::bessel_k;
    using special::bessel_k_prime;
    const double s = (1.0 / (u * u) + 1.0 / (w * w)) /
                     (bessel_j_prime(1, u) / (u * bessel_j(1, u)) +
                      bessel_k_prime(1, w) / (w * bessel_k(1, w)));
    CHECK(rel(m.s, s) < 1e-12);
}

TEST_CASE("perturbed scan finds the same root") {
    const FiberSpec spec = nanorod_experiment_fiber();
    SolverOptions opt;
    opt.scan_points = 1777;
    opt.edge_margin = 3.7e-9;
    CHECK(rel(solve_he11(spec, opt).beta, experiment_mode().beta) < 1e-12);
    opt.scan_points = 50;
    CHECK(rel(solve_he11(spec, opt).beta, experiment_mode().beta) < 1e-12);
}

TEST_CASE("random specs: guidance bounds, residual, reproducibility") {
    gen::Gen g(20261018);
    for (int i = 0; i < 200; ++i) {
        const FiberSpec spec = g.fiber();
        CAPTURE(spec.radius_nm);
        CAPTURE(spec.wavelength_nm);
        CAPTURE(spec.n_core);
        CAPTURE(spec.n_clad);
        const ModeSolution m = solve_he11(spec);
        CHECK(m.effective_index() > spec.n_clad);
        CHECK(m.effective_index() < spec.n_core);
        CHECK(std::abs(m.residual) < 1e-10 * m.residual_scale);
        CHECK(m.single_mode);
        SolverOptions opt;
        opt.scan_points = 1311;
        CHECK(rel(solve_he11(spec, opt).beta, m.beta) < 1e-12);
    }
}

TEST_CASE("effective index grows with radius") {
    FiberSpec spec = nanorod_experiment_fiber();
    double previous = spec.n_clad;
    for (double a = 60.0; a <= 400.0; a += 10.0) {
        spec.radius_nm = a;
        const double n = solve_he11(spec).effective_index();
        CHECK(n > previous);
        previous = n;
    }
}

TEST_CASE("weakly guided fibre") {
    // V ~ 0.63: n_eff sits within 1e-6 of the cladding index.
    FiberSpec spec = nanorod_experiment_fiber();
    spec.radius_nm = 60.0;
    const ModeSolution m = solve_he11(spec);
    CHECK(m.effective_index() - spec.n_clad > 0.0);
    CHECK(m.effective_index() - spec.n_clad < 1e-5);
    CHECK(std::abs(m.residual) < 1e-10 * m.residual_scale);
    const double w = m.q * spec.radius_nm;
    const double u = m.h * spec.radius_nm;
    CHECK(rel(u * u + w * w, m.v_number * m.v_number) < 1e-12);
}

TEST_CASE("no guided root above the scan floor") {
    // V ~ 3e-4: the HE11 root lies far below b = 1e-9.
    const FiberSpec spec{10.0, 10000.0, 1.001, 1.0};
    CHECK_THROWS_AS(solve_he11(spec), SolverError);
}

TEST_CASE("above cutoff the solver still returns HE11 but flags it") {
    FiberSpec spec = nanorod_experiment_fiber();
    spec.radius_nm = 400.0;
    const ModeSolution m = solve_he11(spec);
    CHECK_FALSE(m.single_mode);
    CHECK(std::abs(m.residual) < 1e-10 * m.residual_scale);
    // HE11 has u < 2.405 whatever V is.
    CHECK(m.h * spec.radius_nm < 2.405);
}

TEST_CASE("invalid specs are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto rejects = [](FiberSpec s) {
        CHECK_THROWS_AS(s.validate(), std::invalid_argument);
        CHECK_THROWS_AS(solve_he11(s), std::invalid_argument);
    };
    FiberSpec s = nanorod_experiment_fiber();
    s.radius_nm = 5.0;
    rejects(s);
    s = nanorod_experiment_fiber();
    s.radius_nm = 2e4;
    rejects(s);
    s = nanorod_experiment_fiber();
    s.wavelength_nm = 0.0;
    rejects(s);
    s = nanorod_experiment_fiber();
    s.wavelength_nm = nan;
    rejects(s);
    s = nanorod_experiment_fiber();
    s.n_core = 1.0;
    rejects(s);
    s = nanorod_experiment_fiber();
    s.n_clad = 0.9;
    s.n_core = 1.2;
    rejects(s);
    CHECK_THROWS_AS(solve_he11(nanorod_experiment_fiber(), SolverOptions{1}),
                    std::invalid_argument);
}

TEST_CASE("solver failure reports the scanned sign pattern") {
    SolverOptions opt;
    opt.edge_margin = 0.2;  // b in (0.2, 0.8) misses the root at b ~ 0.142
    try {
        solve_he11(nanorod_experiment_fiber(), opt);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.sign_pattern().find("x2000") != std::string::npos);
        CHECK(e.bracket_lo() < e.bracket_hi());
        CHECK(std::string(e.what()).find(e.sign_pattern()) != std::string::npos);
    }
}

TEST_CASE("profile reality structure") {
    const ModeSolution& m = experiment_mode();
    for (int i = 1; i <= 50; ++i) {
        const double r = 3.0 * m.spec.radius_nm * i / 50.0;
        const CylindricalProfile p = cylindrical_profile(m, r);
        CHECK(p.e_r.real() == 0.0);
        CHECK(p.e_phi.imag() == 0.0);
        CHECK(p.e_z.imag() == 0.0);
    }
    CHECK(cylindrical_profile(m, 0.0).e_z.real() == 0.0);
}

TEST_CASE("boundary conditions at the core surface") {
    gen::Gen g(7);
    for (int i = 0; i < 50; ++i) {
        const ModeSolution m = i == 0 ? experiment_mode() : solve_he11(g.fiber());
        const double a = m.spec.radius_nm;
        const CylindricalProfile in = cylindrical_profile(m, a, ProfileBranch::core);
        const CylindricalProfile out = cylindrical_profile(m, a, ProfileBranch::cladding);
        const double n1 = m.spec.n_core;
        const double n2 = m.spec.n_clad;
        CHECK(rel(in.e_z.real(), out.e_z.real()) < 1e-8);
        CHECK(rel(in.e_phi.real(), out.e_phi.real()) < 1e-8);
        CHECK(rel(n1 * n1 * in.e_r.imag(), n2 * n2 * out.e_r.imag()) < 1e-8);
    }
    CHECK_THROWS_AS(cylindrical_profile(experiment_mode(), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(cylindrical_profile(experiment_mode(), 0.0, ProfileBranch::cladding),
                    std::invalid_argument);
}

TEST_CASE("evanescent decay outside the core") {
    const ModeSolution& m = experiment_mode();
    const double a = m.spec.radius_nm;
    double previous = std::abs(cylindrical_profile(m, a).e_z);
    for (double r = a + 1.0; r < 6.0 * a; r += 1.0) {
        const double ez = std::abs(cylindrical_profile(m, r).e_z);
        CHECK(ez < previous);
        previous = ez;
    }
}

TEST_CASE("field ratio at the dipole radius") {
    const ModeSolution& m = experiment_mode();
    const CylindricalProfile p = cylindrical_profile(m, m.spec.radius_nm + 9.0);
    const double ratio = std::abs(p.e_z) / std::abs(p.e_phi);
    CHECK(ratio > std::tan(deg_to_rad(41.5)));
    CHECK(ratio < std::tan(deg_to_rad(44.5)));
}

namespace {

// (E_{+1} + E_{-1}) and (E_{+1} - E_{-1}) from the cylindrical profile, with
// E_l = (e_r r + l e_phi phi + e_z z) e^{i l phi}, converted to Cartesian.
ComplexVector3 brute_force_mode(const ModeSolution& m, ModeAxis axis, double r, double phi) {
    const CylindricalProfile p = cylindrical_profile(m, r);
    const Complex ep = std::polar(1.0, phi);
    const Complex em = std::polar(1.0, -phi);
    const double sign = axis == ModeAxis::x_prime ? 1.0 : -1.0;
    const Complex er = p.e_r * (ep + sign * em);
    const Complex ephi = p.e_phi * (ep - sign * em);
    const Complex ez = p.e_z * (ep + sign * em);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    ComplexVector3 v{er * c - ephi * s, er * s + ephi * c, ez};
    const Complex scale = axis == ModeAxis::x_prime ? Complex(0.0, 1.0 / std::sqrt(2.0))
                                                    : Complex(1.0 / std::sqrt(2.0), 0.0);
    for (auto& comp : v) comp *= scale;
    return v;
}

}  // namespace

TEST_CASE("quasi-linear modes match the brute-force superposition") {
    const ModeSolution& m = experiment_mode();
    gen::Gen g(11);
    for (int i = 0; i < 300; ++i) {
        const double r = g.uniform(1.0, 3.0 * m.spec.radius_nm);
        const double phi = g.uniform(-pi, pi);
        for (ModeAxis axis : {ModeAxis::x_prime, ModeAxis::y_prime}) {
            const ComplexVector3 got = quasi_linear_field(m, axis, r, phi);
            const ComplexVector3 want = brute_force_mode(m, axis, r, phi);
            const double scale = norm(want);
            for (int k = 0; k < 3; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12 * scale);
        }
    }
}

TEST_CASE("quasi-linear modes at the dipole position") {
    const ModeSolution& m = experiment_mode();
    const double r = m.spec.radius_nm + 9.0;
    const CylindricalProfile p = cylindrical_profile(m, r);
    const ComplexVector3 x = quasi_linear_field(m, ModeAxis::x_prime, r, pi / 2);
    const ComplexVector3 y = quasi_linear_field(m, ModeAxis::y_prime, r, pi / 2);

    CHECK(x[2] == Complex(0.0, 0.0));
    CHECK(x[1] == Complex(0.0, 0.0));
    CHECK(x[0].imag() == 0.0);
    CHECK(rel(std::abs(x[0]), std::sqrt(2.0) * std::abs(p.e_phi)) < 1e-14);

    CHECK(y[2].real() == 0.0);
    CHECK(rel(y[2].imag(), std::sqrt(2.0) * p.e_z.real()) < 1e-14);
    CHECK(y[0] == Complex(0.0, 0.0));

    const ComplexVector3 bx = brute_force_mode(m, ModeAxis::x_prime, r, pi / 2);
    CHECK(std::abs(bx[0] - x[0]) < 1e-12 * std::abs(x[0]));
}
