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

#include "nfpol/polarimetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfpol {
namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Orientation from +y toward +x. Adding +0.0 turns -0 into +0 so that the
// horizontal state lands on +90 rather than -90.
double orientation_deg(const StokesVector& s) {
    return 0.5 * rad_to_deg(std::atan2(s.s2 + 0.0, -s.s1));
}

}  // namespace

StokesVector StokesVector::normalized() const {
    if (!(s0 > 0.0)) throw std::domain_error("StokesVector: s0 must be positive");
    return {1.0, s1 / s0, s2 / s0, s3 / s0};
}

double StokesVector::polarized_intensity() const {
    return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

StokesVector stokes_from_jones(const JonesVector& j) {
    const double ix = std::norm(j.x);
    const double iy = std::norm(j.y);
    if (ix == 0.0 && iy == 0.0) {
        throw std::domain_error("stokes_from_jones: zero Jones vector has no polarization state");
    }
    const Complex cross = std::conj(j.x) * j.y;
    return {ix + iy, ix - iy, 2.0 * cross.real(), 2.0 * cross.imag()};
}

PolarizationEllipse ellipse_from_stokes(const StokesVector& s) {
    if (!(s.s0 > 0.0)) throw std::domain_error("ellipse_from_stokes: s0 must be positive");
    PolarizationEllipse e;
    if (s.s1 == 0.0 && s.s2 == 0.0 && s.s3 == 0.0) {
        e.orientation_defined = false;
        return e;
    }
    const double circular = s.s3 / s.s0;
    e.psi_deg = orientation_deg(s);
    e.ellipticity_deg = 0.5 * rad_to_deg(std::asin(clamp_unit(circular)));
    if (circular > linear_threshold) {
        e.handedness = Handedness::ccw;
    } else if (circular < -linear_threshold) {
        e.handedness = Handedness::cw;
    }
    return e;
}

PoincarePoint poincare_from_stokes(const StokesVector& s) {
    if (!(s.s0 > 0.0)) throw std::domain_error("poincare_from_stokes: s0 must be positive");
    return {2.0 * orientation_deg(s), rad_to_deg(std::asin(clamp_unit(s.s3 / s.s0)))};
}

JonesVector jones_from_ellipse(double psi_deg, double ellipticity_deg) {
    const SinCos e = sincos_deg(ellipticity_deg);
    // psi is measured from +y; rotate_jones measures from +x.
    return rotate_jones(JonesVector{Complex(e.cos, 0.0), Complex(0.0, e.sin)}, 90.0 - psi_deg);
}

JonesVector rotate_jones(const JonesVector& j, double angle_deg) {
    const SinCos r = sincos_deg(angle_deg);
    return {j.x * r.cos - j.y * r.sin, j.x * r.sin + j.y * r.cos, j.basis};
}

double poincare_distance_deg(const StokesVector& a, const StokesVector& b) {
    const double na = a.polarized_intensity();
    const double nb = b.polarized_intensity();
    if (na == 0.0 || nb == 0.0) {
        throw std::domain_error("poincare_distance_deg: unpolarized state has no sphere point");
    }
    const double ax = a.s1 / na, ay = a.s2 / na, az = a.s3 / na;
    const double bx = b.s1 / nb, by = b.s2 / nb, bz = b.s3 / nb;
    const double cx = ay * bz - az * by;
    const double cy = az * bx - ax * bz;
    const double cz = ax * by - ay * bx;
    return rad_to_deg(std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), ax * bx + ay * by + az * bz));
}

JonesMatrix JonesMatrix::identity() { return {1.0, 0.0, 0.0, 1.0}; }

JonesMatrix JonesMatrix::rotator(double angle_deg) {
    const SinCos r = sincos_deg(angle_deg);
    return {r.cos, -r.sin, r.sin, r.cos};
}

JonesMatrix JonesMatrix::retarder(double retardance_rad, double axis_deg) {
    const Complex fast = std::polar(1.0, -0.5 * retardance_rad);
    const JonesMatrix diag{fast, 0.0, 0.0, std::conj(fast)};
    return rotator(axis_deg) * diag * rotator(-axis_deg);
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix& o) const {
    return {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
}

JonesMatrix JonesMatrix::operator*(Complex c) const {
    return {m_[0] * c, m_[1] * c, m_[2] * c, m_[3] * c};
}

JonesMatrix JonesMatrix::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double JonesMatrix::unitarity_error() const {
    const JonesMatrix p = *this * adjoint();
    return std::max({std::abs(p(0, 0) - 1.0), std::abs(p(0, 1)), std::abs(p(1, 0)),
                     std::abs(p(1, 1) - 1.0)});
}

JonesVector apply_jones(const JonesMatrix& m, const JonesVector& j) {
    return {m(0, 0) * j.x + m(0, 1) * j.y, m(1, 0) * j.x + m(1, 1) * j.y, j.basis};
}

}  // namespace nfpol
