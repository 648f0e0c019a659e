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

// Gold nanorod as an anisotropic point scatterer under linearly polarized
// illumination. The exciting field lies in the plane tangent to the fibre at
// the rod and is split into a component E_L along the rod and E_T across it;
// the induced dipole is alpha_L E_L u_L + alpha_T E_T u_T.
//
// The model has no background: bare-fibre scattering (below 0.5 % of the rod
// signal on the bench) is neglected.

#include <cstdint>
#include <span>
#include <vector>

#include "nfpol/dipole_coupling.hpp"

namespace nfpol {

struct NanorodModel {
    Complex alpha_long{1.0, 0.0};
    Complex alpha_trans{0.1, 0.0};

    /// Throws std::invalid_argument when alpha_long is zero or either value is not finite.
    void validate() const;
};

/// Beam polarization angle chi; chi == chi_max aligns the field with the rod.
struct ExcitationField {
    double chi_deg = 0.0;
    double amplitude = 1.0;
    double chi_max_deg = 0.0;
};

/// Rod axis u_L = (sin theta, 0, cos theta) and in-plane normal
/// u_T = (cos theta, 0, -sin theta), primed frame.
struct RodAxes {
    ComplexVector3 longitudinal;
    ComplexVector3 transverse;
};
RodAxes rod_axes(double theta_deg);

/// Induced dipole in the primed frame.
ComplexVector3 induced_dipole(const NanorodModel& rod, const DipolePose& pose,
                              const ExcitationField& exc);

struct MalusSample {
    double chi_deg = 0.0;
    double power = 0.0;
};

/// |alpha_L|^2 cos^2(chi - chi_max) + |alpha_T|^2 sin^2(chi - chi_max),
/// divided by its maximum over chi.
std::vector<MalusSample> malus_power(const NanorodModel& rod, std::span<const double> chis_deg,
                                     double chi_max_deg = 0.0);

struct ExcitationRow {
    double chi_deg = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double psi_deg = 0.0;
    double distance_deg = 0.0;  ///< Poincare distance from the chi_max state
    bool has_signal = true;     ///< false when the induced dipole vanishes
};

struct ExcitationSweep {
    std::vector<ExcitationRow> rows;
    double drift_deg = 0.0;  ///< max distance over rows with signal
};

/// Relative dipole magnitude below which a row is reported as "no signal".
inline constexpr double no_signal_threshold = 1e-15;

/// Guided polarization as the beam polarization turns. The rod pose and the
/// fibre mode fix the coupling; only the induced dipole varies with chi.
ExcitationSweep guided_stokes_vs_excitation(const NanorodModel& rod, const DipolePose& pose,
                                            const ModeSolution& mode,
                                            std::span<const double> chis_deg,
                                            double chi_max_deg = 0.0,
                                            Propagation dir = Propagation::forward);

class FitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct MalusFit {
    double chi_max_deg = 0.0;  ///< in [0, 180)
    double amplitude = 0.0;
    double floor = 0.0;
    /// Set when the data carry no cos^2 modulation; chi_max_deg is then 0.
    bool degenerate_orientation = false;
};

/// Least-squares fit of a cos^2(chi - chi0) + b, linear in
/// (a/2 + b, a/2 cos 2 chi0, a/2 sin 2 chi0). Residuals are weighted by the
/// inverse of the fitted value (iteratively), matching multiplicative noise.
///
/// Throws std::invalid_argument for fewer than 5 samples or a span below
/// 60 degrees, and FitError for fewer than 3 distinct angles.
MalusFit fit_malus(std::span<const MalusSample> samples);

/// Multiplies each power by (1 + rel_sigma N(0, 1)), seeded.
void apply_multiplicative_noise(std::span<MalusSample> samples, double rel_sigma,
                                std::uint64_t seed);

/// Samples of (a cos^2(chi - chi0) + b)(1 + rel_sigma N(0, 1)), seeded.
std::vector<MalusSample> synthetic_malus_samples(std::span<const double> chis_deg, double chi0_deg,
                                                 double amplitude, double floor,
                                                 double rel_sigma, std::uint64_t seed);

}  // namespace nfpol
