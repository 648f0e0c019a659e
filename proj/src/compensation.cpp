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

#include "nfpol/compensation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "nfpol/optimize.hpp"

namespace nfpol {
namespace {

constexpr int berek_grid = 64;
constexpr double unitarity_tolerance = 1e-9;

struct Su2Parts {
    Complex a;  // M = [[a, -b*], [b, a*]]
    Complex b;
};

// Projects a unitary onto SU(2) by removing sqrt(det), then symmetrizes.
Su2Parts su2_parts(const JonesMatrix& u) {
    const Complex root = std::sqrt(u.determinant());
    const JonesMatrix m = u * (1.0 / root);
    return {0.5 * (m(0, 0) + std::conj(m(1, 1))), 0.5 * (m(1, 0) - std::conj(m(0, 1)))};
}

double wrap_180(double deg) {
    double r = std::fmod(deg, 180.0);
    if (r < 0.0) r += 180.0;
    return r >= 180.0 ? 0.0 : r;
}

// Retarder (delta, axis) equals retarder(2 pi - delta, axis + 90) up to a sign,
// so every setting has a representative with delta in [0, pi].
CompensatorSetting canonical_berek(double delta, double axis_deg) {
    delta = std::fmod(delta, 2.0 * pi);
    if (delta < 0.0) delta += 2.0 * pi;
    if (delta > pi) {
        delta = 2.0 * pi - delta;
        axis_deg += 90.0;
    }
    CompensatorSetting s;
    s.retardance_rad = delta;
    s.axis_deg = wrap_180(axis_deg);
    return s;
}

CompensationResult fit_single_berek(const JonesMatrix& m) {
    auto objective = [&m](const std::vector<double>& p) {
        return infidelity(JonesMatrix::retarder(p[0], rad_to_deg(p[1])).adjoint(), m);
    };

    const double d_step = 2.0 * pi / berek_grid;
    const double r_step = pi / berek_grid;
    std::vector<double> best{0.0, 0.0};
    double best_value = objective(best);
    for (int i = 0; i < berek_grid; ++i) {
        for (int j = 0; j < berek_grid; ++j) {
            const std::vector<double> p{d_step * i, r_step * j};
            const double v = objective(p);
            if (v < best_value) {
                best_value = v;
                best = p;
            }
        }
    }

    const SimplexResult refined = nelder_mead(objective, best, {d_step, r_step});
    if (!refined.converged) {
        throw NumericalError("compensate: single-Berek refinement did not converge after " +
                             std::to_string(refined.evaluations) + " evaluations");
    }
    CompensationResult r;
    r.mode = CompensationMode::single_berek;
    r.setting = canonical_berek(refined.x[0], rad_to_deg(refined.x[1]));
    r.residual_infidelity = infidelity(compensator_unitary(r.setting), m);
    return r;
}

// M = R(p) D(delta) R(q) with R(t) = exp(-i t sigma_y), D(d) = exp(-i d sigma_z / 2):
//   a = cos(d/2) cos(p+q) - i sin(d/2) cos(p-q)
//   b = cos(d/2) sin(p+q) - i sin(d/2) sin(p-q)
CompensationResult fit_full(const JonesMatrix& m) {
    const Su2Parts su = su2_parts(m);
    const double cos_half = std::hypot(su.a.real(), su.b.real());
    const double sin_half = std::hypot(su.a.imag(), su.b.imag());
    const double sum = std::atan2(su.b.real(), su.a.real());
    const double diff = std::atan2(-su.b.imag(), -su.a.imag());

    CompensationResult r;
    r.mode = CompensationMode::full;
    r.setting.retardance_rad = 2.0 * std::atan2(sin_half, cos_half);
    r.setting.axis_deg = 0.0;
    r.setting.post_rotation_deg = rad_to_deg(0.5 * (sum + diff));
    r.setting.pre_rotation_deg = rad_to_deg(0.5 * (sum - diff));
    r.residual_infidelity = infidelity(compensator_unitary(r.setting), m);
    return r;
}

}  // namespace

std::string to_string(CompensationMode mode) {
    return mode == CompensationMode::full ? "full" : "single_berek";
}

CompensationMode compensation_mode_from_string(const std::string& name) {
    if (name == "single_berek") return CompensationMode::single_berek;
    if (name == "full") return CompensationMode::full;
    throw std::invalid_argument("unknown compensation mode '" + name +
                                "' (expected single_berek or full)");
}

JonesMatrix random_fiber_unitary(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    double x[4];
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& v : x) {
            v = gauss(rng);
            n2 += v * v;
        }
    } while (n2 == 0.0);
    const double inv = 1.0 / std::sqrt(n2);
    // Uniform point on S^3 -> Haar SU(2); a uniform global phase extends it to U(2).
    const Complex a(x[0] * inv, x[3] * inv);
    const Complex b(x[2] * inv, x[1] * inv);
    const Complex g = std::polar(1.0, phase(rng));
    return JonesMatrix(a, -std::conj(b), b, std::conj(a)) * g;
}

JonesMatrix setting_unitary(const CompensatorSetting& setting) {
    JonesMatrix u = JonesMatrix::retarder(setting.retardance_rad, setting.axis_deg);
    if (setting.pre_rotation_deg) u = u * JonesMatrix::rotator(*setting.pre_rotation_deg);
    if (setting.post_rotation_deg) u = JonesMatrix::rotator(*setting.post_rotation_deg) * u;
    return u;
}

JonesMatrix compensator_unitary(const CompensatorSetting& setting) {
    return setting_unitary(setting).adjoint();
}

double infidelity(const JonesMatrix& w, const JonesMatrix& m) {
    // For U in SU(2), |tr U|^2 / 4 = Re(a)^2, so 1 - |tr U|^2 / 4 = Im(a)^2 + |b|^2.
    const Su2Parts su = su2_parts(w * m);
    return su.a.imag() * su.a.imag() + std::norm(su.b);
}

CompensationResult compensate(const JonesMatrix& m, CompensationMode mode) {
    if (!(m.unitarity_error() <= unitarity_tolerance)) {
        throw std::invalid_argument("compensate: fibre matrix is not unitary");
    }
    return mode == CompensationMode::full ? fit_full(m) : fit_single_berek(m);
}

}  // namespace nfpol
