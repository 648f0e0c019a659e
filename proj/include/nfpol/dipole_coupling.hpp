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

// Guided light launched into the HE11 mode by a linear dipole lying on the
// fibre surface.
//
// Frames: the lab frame has z along the fibre and y vertical. The primed frame
// (x', y', z) is the lab frame turned by the azimuth alpha so that y' is the
// outward surface normal at the dipole. The dipole sits at phi = pi/2 in the
// primed frame, at radius a + gap, and makes the tilt angle theta with z inside
// the tangent plane: d = (sin theta, 0, cos theta).
//
// The guided field is A HE11,x' + B HE11,y' with A = d . HE11,x' and
// B = d . HE11,y' evaluated at the dipole (no complex conjugation). The two
// quasi-linear modes are rescaled by real signs so that A = C sin theta and
// B = i D cos theta with C, D > 0; this fixes the handedness convention to
// theta > 0 => S3 > 0 for forward propagation.

#include <span>
#include <vector>

#include "nfpol/fiber_mode.hpp"
#include "nfpol/polarimetry.hpp"

namespace nfpol {

/// Dipole position and orientation. Angles in degrees, lengths in nm.
struct DipolePose {
    double alpha_deg = 0.0;  ///< azimuth of y' from lab +y toward +x, [-90, 90]
    double theta_deg = 0.0;  ///< tilt from the fibre axis, [-90, 90]
    double gap_nm = 9.0;     ///< dipole height above the surface

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    double dipole_radius(const FiberSpec& spec) const { return spec.radius_nm + gap_nm; }
};

enum class Propagation { forward, backward };  ///< +z, -z

/// Unit dipole (sin theta, 0, cos theta) in the primed frame.
ComplexVector3 dipole_moment(double theta_deg);

/// Positive mode magnitudes at the dipole: C for the x'-mode transverse
/// component, D for the y'-mode longitudinal component.
struct ModeOverlap {
    double c = 0.0;
    double d = 0.0;
    double sign_x = 1.0;  ///< real sign applied to the x'-mode
    double sign_y = 1.0;  ///< real sign applied to the y'-mode
};

/// Overlap from the two quasi-linear mode vectors sampled at the dipole.
/// Any common real rescaling of both vectors leaves D / C unchanged.
ModeOverlap mode_overlap(const ComplexVector3& x_mode, const ComplexVector3& y_mode);

/// Overlap for a dipole at `radius_nm` on the phi = pi/2 line of `mode`.
ModeOverlap mode_overlap(const ModeSolution& mode, double radius_nm);

struct CouplingAmplitudes {
    Complex a;       ///< x'-mode amplitude, C sin theta
    Complex b;       ///< y'-mode amplitude, i D cos theta
    double c = 0.0;
    double d = 0.0;
};

/// Projects an arbitrary (possibly complex) dipole onto both modes.
CouplingAmplitudes project_dipole(const ComplexVector3& x_mode, const ComplexVector3& y_mode,
                                  const ComplexVector3& dipole);

CouplingAmplitudes coupling_amplitudes(const ModeSolution& mode, const DipolePose& pose);

/// Guided Jones vector in the lab basis: (A, B) in the primed basis, rotated by
/// the azimuth. Backward propagation conjugates the relative phase (B -> -B).
JonesVector guided_jones(const CouplingAmplitudes& amps, double alpha_deg, Propagation dir);

/// arctan(D / C) in degrees: the tilt giving |A| = |B|.
double theta_circ_deg(const ModeSolution& mode, double gap_nm);
double theta_circ_deg(const ModeOverlap& overlap);

/// Normalized S3 from the closed form 2t / (1 + t^2), t = tan(theta) / tan(theta_circ).
double closed_form_s3(double theta_deg, double theta_circ);

struct StokesRow {
    double theta_deg = 0.0;
    double s1 = 0.0;  ///< normalized by S0
    double s2 = 0.0;
    double s3 = 0.0;
    double psi_deg = 0.0;
    double ellipticity_deg = 0.0;
    double s0 = 0.0;  ///< raw guided intensity, for the never-vanishing check
};

/// Guided Stokes state for a single pose.
StokesVector guided_stokes(const ModeSolution& mode, const DipolePose& pose, Propagation dir);

/// One row per tilt, in the order given. Rows are independent of each other.
std::vector<StokesRow> stokes_vs_theta(const ModeSolution& mode, double alpha_deg,
                                       std::span<const double> thetas_deg, double gap_nm,
                                       Propagation dir = Propagation::forward);

struct PoincareMapping {
    PoincarePoint point;                 ///< from the full pipeline
    double closed_form_latitude_deg;     ///< arcsin(2t / (1 + t^2))
    double linear_latitude_deg;          ///< (90 / theta_circ) theta
};

PoincareMapping poincare_map(double alpha_deg, double theta_deg, const ModeSolution& mode,
                             double gap_nm);

/// Exact latitude as a function of tilt, degrees.
double exact_latitude_deg(double theta_deg, double theta_circ);

/// Largest |exact - linear| latitude difference over `samples` equally spaced
/// tilts in [-theta_circ, theta_circ].
double max_linear_map_error_deg(double theta_circ, int samples = 20001);

}  // namespace nfpol
