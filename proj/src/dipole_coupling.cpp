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

#include "nfpol/dipole_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfpol {
namespace {

constexpr double dipole_phi = pi / 2.0;

bool in_angle_range(double deg) { return std::isfinite(deg) && deg >= -90.0 && deg <= 90.0; }

struct ModePair {
    ComplexVector3 x;
    ComplexVector3 y;
};

ModePair modes_at_dipole(const ModeSolution& mode, double radius_nm) {
    return {quasi_linear_field(mode, ModeAxis::x_prime, radius_nm, dipole_phi),
            quasi_linear_field(mode, ModeAxis::y_prime, radius_nm, dipole_phi)};
}

StokesRow make_row(double theta_deg, const StokesVector& s) {
    const StokesVector n = s.normalized();
    const PolarizationEllipse e = ellipse_from_stokes(s);
    StokesRow row;
    row.theta_deg = theta_deg;
    row.s1 = n.s1;
    row.s2 = n.s2;
    row.s3 = n.s3;
    row.psi_deg = e.psi_deg;
    row.ellipticity_deg = e.ellipticity_deg;
    row.s0 = s.s0;
    return row;
}

}  // namespace

void DipolePose::validate() const {
    if (!in_angle_range(alpha_deg)) {
        throw std::invalid_argument("dipole azimuth must lie in [-90, 90] degrees");
    }
    if (!in_angle_range(theta_deg)) {
        throw std::invalid_argument("dipole tilt must lie in [-90, 90] degrees");
    }
    if (!std::isfinite(gap_nm) || gap_nm < 0.0) {
        throw std::invalid_argument("dipole surface gap must be finite and >= 0");
    }
}

ComplexVector3 dipole_moment(double theta_deg) {
    const SinCos t = sincos_deg(theta_deg);
    return {Complex(t.sin, 0.0), Complex(0.0, 0.0), Complex(t.cos, 0.0)};
}

ModeOverlap mode_overlap(const ComplexVector3& x_mode, const ComplexVector3& y_mode) {
    const double c_raw = x_mode[0].real();
    const double d_raw = y_mode[2].imag();
    if (c_raw == 0.0 || d_raw == 0.0) {
        throw std::domain_error("mode_overlap: a quasi-linear mode vanishes at the dipole");
    }
    ModeOverlap o;
    o.sign_x = c_raw < 0.0 ? -1.0 : 1.0;
    o.sign_y = d_raw < 0.0 ? -1.0 : 1.0;
    o.c = std::abs(c_raw);
    o.d = std::abs(d_raw);
    return o;
}

ModeOverlap mode_overlap(const ModeSolution& mode, double radius_nm) {
    const ModePair m = modes_at_dipole(mode, radius_nm);
    return mode_overlap(m.x, m.y);
}

CouplingAmplitudes project_dipole(const ComplexVector3& x_mode, const ComplexVector3& y_mode,
                                  const ComplexVector3& dipole) {
    const ModeOverlap o = mode_overlap(x_mode, y_mode);
    return {o.sign_x * dot(dipole, x_mode), o.sign_y * dot(dipole, y_mode), o.c, o.d};
}

CouplingAmplitudes coupling_amplitudes(const ModeSolution& mode, const DipolePose& pose) {
    pose.validate();
    const ModePair m = modes_at_dipole(mode, pose.dipole_radius(mode.spec));
    return project_dipole(m.x, m.y, dipole_moment(pose.theta_deg));
}

JonesVector guided_jones(const CouplingAmplitudes& amps, double alpha_deg, Propagation dir) {
    const JonesVector primed{amps.a, dir == Propagation::backward ? -amps.b : amps.b,
                             JonesBasis::primed};
    // x' = (cos a, -sin a) and y' = (sin a, cos a) in the lab: a rotation by -alpha.
    JonesVector lab = rotate_jones(primed, -alpha_deg);
    lab.basis = JonesBasis::lab;
    return lab;
}

double theta_circ_deg(const ModeOverlap& overlap) {
    return rad_to_deg(std::atan2(overlap.d, overlap.c));
}

double theta_circ_deg(const ModeSolution& mode, double gap_nm) {
    if (!std::isfinite(gap_nm) || gap_nm < 0.0) {
        throw std::invalid_argument("theta_circ_deg: gap must be finite and >= 0");
    }
    return theta_circ_deg(mode_overlap(mode, mode.spec.radius_nm + gap_nm));
}

double closed_form_s3(double theta_deg, double theta_circ) {
    // 2t / (1 + t^2) rewritten to stay finite at theta = +-90.
    const SinCos t = sincos_deg(theta_deg);
    const double tau = std::tan(deg_to_rad(theta_circ));
    return 2.0 * tau * t.sin * t.cos / (t.sin * t.sin + tau * tau * t.cos * t.cos);
}

StokesVector guided_stokes(const ModeSolution& mode, const DipolePose& pose, Propagation dir) {
    return stokes_from_jones(guided_jones(coupling_amplitudes(mode, pose), pose.alpha_deg, dir));
}

std::vector<StokesRow> stokes_vs_theta(const ModeSolution& mode, double alpha_deg,
                                       std::span<const double> thetas_deg, double gap_nm,
                                       Propagation dir) {
    DipolePose pose{alpha_deg, 0.0, gap_nm};
    pose.validate();
    const ModePair m = modes_at_dipole(mode, pose.dipole_radius(mode.spec));
    std::vector<StokesRow> rows;
    rows.reserve(thetas_deg.size());
    for (const double theta : thetas_deg) {
        pose.theta_deg = theta;
        pose.validate();
        const CouplingAmplitudes amps = project_dipole(m.x, m.y, dipole_moment(theta));
        rows.push_back(make_row(theta, stokes_from_jones(guided_jones(amps, alpha_deg, dir))));
    }
    return rows;
}

double exact_latitude_deg(double theta_deg, double theta_circ) {
    return rad_to_deg(std::asin(std::clamp(closed_form_s3(theta_deg, theta_circ), -1.0, 1.0)));
}

PoincareMapping poincare_map(double alpha_deg, double theta_deg, const ModeSolution& mode,
                             double gap_nm) {
    const DipolePose pose{alpha_deg, theta_deg, gap_nm};
    const CouplingAmplitudes amps = coupling_amplitudes(mode, pose);
    const double theta_circ = rad_to_deg(std::atan2(amps.d, amps.c));
    PoincareMapping out;
    out.point = poincare_from_stokes(
        stokes_from_jones(guided_jones(amps, alpha_deg, Propagation::forward)));
    out.closed_form_latitude_deg = exact_latitude_deg(theta_deg, theta_circ);
    out.linear_latitude_deg = 90.0 / theta_circ * theta_deg;
    return out;
}

double max_linear_map_error_deg(double theta_circ, int samples) {
    if (samples < 2) throw std::invalid_argument("max_linear_map_error_deg: samples < 2");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = -theta_circ + 2.0 * theta_circ * i / (samples - 1);
        const double diff = exact_latitude_deg(theta, theta_circ) - 90.0 / theta_circ * theta;
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

}  // namespace nfpol
