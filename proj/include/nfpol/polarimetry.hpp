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

// Jones and Stokes descriptions of fully polarized light.
//
// Conventions used throughout:
//   - S3 = 2 Im(Ex* Ey); S3 > 0 is called counter-clockwise (CCW).
//   - Orientation psi is measured from the +y axis toward +x, in (-90, 90].
//     A state linearly polarized along (sin a, cos a) has psi = a.
//   - Poincare longitude is 2 psi, latitude is 2 x ellipticity angle.

#include <array>

#include "nfpol/common.hpp"

namespace nfpol {

enum class JonesBasis { lab, primed };

struct JonesVector {
    Complex x;
    Complex y;
    JonesBasis basis = JonesBasis::lab;
};

struct StokesVector {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    /// Divides by s0. Throws std::domain_error when s0 <= 0.
    StokesVector normalized() const;
    double polarized_intensity() const;
};

enum class Handedness { ccw, cw, linear };

struct PolarizationEllipse {
    double psi_deg = 0.0;
    double ellipticity_deg = 0.0;  ///< in [-45, 45]
    Handedness handedness = Handedness::linear;
    /// False for unpolarized input, where psi is meaningless and reported as 0.
    bool orientation_defined = true;
};

struct PoincarePoint {
    double longitude_deg = 0.0;
    double latitude_deg = 0.0;
};

/// Below this |S3|/S0 a state counts as linear.
inline constexpr double linear_threshold = 1e-12;

/// Throws std::domain_error for the zero vector.
StokesVector stokes_from_jones(const JonesVector& j);

/// Throws std::domain_error when s0 <= 0.
PolarizationEllipse ellipse_from_stokes(const StokesVector& s);

PoincarePoint poincare_from_stokes(const StokesVector& s);

/// Unit-intensity Jones vector with the given orientation and ellipticity.
JonesVector jones_from_ellipse(double psi_deg, double ellipticity_deg);

/// Rotates the field vector counter-clockwise in the x-y plane:
/// (1, 0) rotated by 90 degrees becomes (0, 1).
JonesVector rotate_jones(const JonesVector& j, double angle_deg);

/// Angle between two states on the Poincare sphere, in degrees.
double poincare_distance_deg(const StokesVector& a, const StokesVector& b);

/// 2x2 complex matrix acting on Jones vectors, row-major.
class JonesMatrix {
public:
    JonesMatrix() = default;
    JonesMatrix(Complex m00, Complex m01, Complex m10, Complex m11) : m_{m00, m01, m10, m11} {}

    static JonesMatrix identity();
    /// Optical rotator; same action as rotate_jones.
    static JonesMatrix rotator(double angle_deg);
    /// Linear retarder with retardance delta and fast axis at `axis_deg` from x:
    /// R(axis) diag(e^{-i delta/2}, e^{i delta/2}) R(-axis).
    static JonesMatrix retarder(double retardance_rad, double axis_deg);

    Complex operator()(int row, int col) const { return m_[2 * row + col]; }
    Complex& operator()(int row, int col) { return m_[2 * row + col]; }

    JonesMatrix operator*(const JonesMatrix& o) const;
    JonesMatrix operator*(Complex c) const;
    JonesMatrix adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }
    Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    /// Max-entry deviation of M M^dagger from the identity.
    double unitarity_error() const;

private:
    std::array<Complex, 4> m_{};
};

JonesVector apply_jones(const JonesMatrix& m, const JonesVector& j);

}  // namespace nfpol
