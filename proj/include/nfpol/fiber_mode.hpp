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

#include <string>

#include "nfpol/common.hpp"

namespace nfpol {

/// Step-index nanofibre: homogeneous core of radius `radius_nm` in an
/// infinite cladding. Lengths in nm, wavelength in vacuum.
struct FiberSpec {
    double radius_nm = 152.5;
    double wavelength_nm = 637.0;
    double n_core = 1.457;
    double n_clad = 1.000;

    /// Throws std::invalid_argument unless 10 nm <= radius, wavelength <= 10 um
    /// and n_core > n_clad >= 1.
    void validate() const;
};

/// Silica nanofibre in air, 305 nm diameter, probed at 637 nm.
inline FiberSpec nanorod_experiment_fiber() { return FiberSpec{}; }

inline constexpr double single_mode_cutoff = 2.405;

/// Normalized frequency (2 pi a / lambda) sqrt(n_core^2 - n_clad^2).
/// Pure formula; does not validate the spec.
double v_number(const FiberSpec& spec);

/// Solved HE11 mode. Wavenumbers are in rad/nm.
struct ModeSolution {
    FiberSpec spec;
    double k = 0.0;                  ///< free-space wavenumber 2 pi / lambda
    double beta = 0.0;               ///< propagation constant
    double h = 0.0;                  ///< core transverse wavenumber
    double q = 0.0;                  ///< cladding decay constant
    double s = 0.0;                  ///< hybrid-mode mixing parameter
    double v_number = 0.0;
    double angular_frequency = 0.0;  ///< rad/s
    bool single_mode = true;
    double residual = 0.0;           ///< eigenvalue-equation residual at the root
    double residual_scale = 1.0;     ///< max(1, |RHS|); the root satisfies |residual| < 1e-10 x this

    double effective_index() const { return beta / k; }
};

struct SolverOptions {
    int scan_points = 2000;
    /// Distance of the scan ends from 0 and 1 in the normalized propagation
    /// constant b = (n_eff^2 - n_clad^2) / (n_core^2 - n_clad^2).
    double edge_margin = 1e-9;
    double relative_tolerance = 1e-14;
    int max_iterations = 200;
};

/// Failure of the HE11 root search. `sign_pattern` is the run-length encoded
/// sign sequence of the scanned residual, highest effective index first.
class SolverError : public NumericalError {
public:
    SolverError(const std::string& what, std::string sign_pattern, double bracket_lo,
                double bracket_hi);

    const std::string& sign_pattern() const noexcept { return sign_pattern_; }
    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    std::string sign_pattern_;
    double lo_;
    double hi_;
};

/// LHS - RHS of the l = 1 hybrid-mode eigenvalue equation at effective index
/// n_eff, in the dimensionless form written in terms of u = h a and w = q a.
double he11_residual(const FiberSpec& spec, double n_eff);

/// Solves for the HE11 root: grid scan for sign changes, then bisection. The
/// scan runs over b rather than n_eff so that u = V sqrt(1 - b) and
/// w = V sqrt(b) keep full precision when the mode is weakly guided
/// (n_eff within 1e-6 of n_clad). The highest-index genuine root is taken;
/// brackets straddling a pole are skipped.
ModeSolution solve_he11(const FiberSpec& spec, const SolverOptions& options = {});

/// Field components of the l = +1 HE11 mode in cylindrical coordinates.
/// e_z and e_phi are real; e_r is purely imaginary.
struct CylindricalProfile {
    Complex e_r;
    Complex e_phi;
    Complex e_z;
};

enum class ProfileBranch { automatic, core, cladding };

/// Profile at radius r (nm). `automatic` picks the core expression for
/// r <= a. The global scale is fixed by e_z = J1(h r) in the core.
CylindricalProfile cylindrical_profile(const ModeSolution& mode, double r_nm,
                                       ProfileBranch branch = ProfileBranch::automatic);

enum class ModeAxis { x_prime, y_prime };

/// Quasi-linearly polarized HE11 mode with main polarization along `axis`, at
/// (r, phi) with phi measured from x'. Components are (x', y', z).
///
/// Built from the l = +-1 modes as x' = i (E+ + E-) / sqrt(2) and
/// y' = (E+ - E-) / sqrt(2), so the transverse parts are real and the
/// longitudinal parts are i sqrt(2) e_z cos(phi) and i sqrt(2) e_z sin(phi).
ComplexVector3 quasi_linear_field(const ModeSolution& mode, ModeAxis axis, double r_nm,
                                  double phi_rad);

}  // namespace nfpol
