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

#include "nfpol/fiber_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "nfpol/special_functions.hpp"

namespace nfpol {
namespace {

using special::bessel_j;
using special::bessel_j_prime;
using special::bessel_k;
using special::bessel_k_prime;

constexpr double min_length_nm = 10.0;
constexpr double max_length_nm = 10000.0;

// Relative residual |LHS - RHS| / max(1, RHS). A converged bracket still above
// the rejection level straddles a pole of the left-hand side.
constexpr double pole_rejection_threshold = 1e-6;
constexpr double residual_contract = 1e-10;

struct Wavenumbers {
    double u;  // h a
    double w;  // q a
};

// (n1 - n)(n1 + n) keeps precision when n_eff is close to either index.
Wavenumbers wavenumbers_from_index(const FiberSpec& spec, double n_eff) {
    const double ka = 2.0 * pi * spec.radius_nm / spec.wavelength_nm;
    const double core = (spec.n_core - n_eff) * (spec.n_core + n_eff);
    const double clad = (n_eff - spec.n_clad) * (n_eff + spec.n_clad);
    return {ka * std::sqrt(core), ka * std::sqrt(clad)};
}

// b = w^2 / V^2 is the normalized propagation constant.
Wavenumbers wavenumbers_from_b(double v, double b) {
    return {v * std::sqrt(1.0 - b), v * std::sqrt(b)};
}

// (n_eff / n_core)^2 at a given b.
double index_ratio2_from_b(const FiberSpec& spec, double b) {
    const double dn2 = (spec.n_core - spec.n_clad) * (spec.n_core + spec.n_clad);
    return (spec.n_clad * spec.n_clad + b * dn2) / (spec.n_core * spec.n_core);
}

struct DispersionTerms {
    double j_term;  // J1'(u) / (u J1(u))
    double k_term;  // K1'(w) / (w K1(w))
};

DispersionTerms dispersion_terms(const Wavenumbers& uw) {
    return {bessel_j_prime(1, uw.u) / (uw.u * bessel_j(1, uw.u)),
            bessel_k_prime(1, uw.w) / (uw.w * bessel_k(1, uw.w))};
}

struct EquationSides {
    double lhs;
    double rhs;
    double residual() const { return lhs - rhs; }
    double scale() const { return std::max(1.0, std::abs(rhs)); }
};

EquationSides equation_sides(const FiberSpec& spec, const Wavenumbers& uw, double index_ratio2) {
    const DispersionTerms t = dispersion_terms(uw);
    const double clad_ratio2 = (spec.n_clad * spec.n_clad) / (spec.n_core * spec.n_core);
    const double inv = 1.0 / (uw.u * uw.u) + 1.0 / (uw.w * uw.w);
    return {(t.j_term + t.k_term) * (t.j_term + clad_ratio2 * t.k_term),
            index_ratio2 * inv * inv};
}

EquationSides sides_at_b(const FiberSpec& spec, double v, double b) {
    return equation_sides(spec, wavenumbers_from_b(v, b), index_ratio2_from_b(spec, b));
}

char sign_char(double v) {
    if (std::isnan(v)) return '?';
    return v > 0.0 ? '+' : (v < 0.0 ? '-' : '0');
}

std::string run_length(const std::vector<double>& values) {
    std::ostringstream out;
    std::size_t i = 0;
    while (i < values.size()) {
        const char c = sign_char(values[i]);
        std::size_t j = i;
        while (j < values.size() && sign_char(values[j]) == c) ++j;
        if (i != 0) out << ' ';
        out << c << 'x' << (j - i);
        i = j;
    }
    return out.str();
}

struct Bracket {
    double lo;
    double f_lo;
    double hi;
    double f_hi;
};

// Bisection in b with a final secant step. Returns (b, residual).
std::pair<double, double> refine(const FiberSpec& spec, double v, Bracket br,
                                 const SolverOptions& opt, bool& converged) {
    auto f = [&](double b) { return sides_at_b(spec, v, b).residual(); };
    converged = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const double mid = 0.5 * (br.lo + br.hi);
        if (br.hi - br.lo <= opt.relative_tolerance * mid) {
            converged = true;
            break;
        }
        const double f_mid = f(mid);
        if (f_mid == 0.0) {
            converged = true;
            return {mid, 0.0};
        }
        if ((f_mid > 0.0) == (br.f_lo > 0.0)) {
            br.lo = mid;
            br.f_lo = f_mid;
        } else {
            br.hi = mid;
            br.f_hi = f_mid;
        }
    }
    double best = std::abs(br.f_lo) < std::abs(br.f_hi) ? br.lo : br.hi;
    double f_best = std::abs(br.f_lo) < std::abs(br.f_hi) ? br.f_lo : br.f_hi;
    const double secant = br.lo - br.f_lo * (br.hi - br.lo) / (br.f_hi - br.f_lo);
    if (secant > br.lo && secant < br.hi) {
        const double f_secant = f(secant);
        if (std::abs(f_secant) < std::abs(f_best)) {
            best = secant;
            f_best = f_secant;
        }
    }
    return {best, f_best};
}

}  // namespace

void FiberSpec::validate() const {
    auto in_range = [](double v) {
        return std::isfinite(v) && v >= min_length_nm && v <= max_length_nm;
    };
    if (!in_range(radius_nm)) {
        throw std::invalid_argument("fiber radius must lie in [10 nm, 10 um]");
    }
    if (!in_range(wavelength_nm)) {
        throw std::invalid_argument("wavelength must lie in [10 nm, 10 um]");
    }
    if (!std::isfinite(n_core) || !std::isfinite(n_clad) || n_clad < 1.0 || n_core <= n_clad) {
        throw std::invalid_argument("refractive indices must satisfy n_core > n_clad >= 1");
    }
}

double v_number(const FiberSpec& spec) {
    const double dn2 = (spec.n_core - spec.n_clad) * (spec.n_core + spec.n_clad);
    return 2.0 * pi * spec.radius_nm / spec.wavelength_nm * std::sqrt(std::max(dn2, 0.0));
}

SolverError::SolverError(const std::string& what, std::string sign_pattern, double bracket_lo,
                         double bracket_hi)
    : NumericalError(what + " [residual signs, high to low n_eff: " + sign_pattern + "]"),
      sign_pattern_(std::move(sign_pattern)),
      lo_(bracket_lo),
      hi_(bracket_hi) {}

double he11_residual(const FiberSpec& spec, double n_eff) {
    const double ratio = n_eff / spec.n_core;
    return equation_sides(spec, wavenumbers_from_index(spec, n_eff), ratio * ratio).residual();
}

ModeSolution solve_he11(const FiberSpec& spec, const SolverOptions& options) {
    spec.validate();
    if (options.scan_points < 2) {
        throw std::invalid_argument("solve_he11: scan_points must be at least 2");
    }
    const double top = 1.0 - options.edge_margin;
    const double bottom = options.edge_margin;
    if (!(options.edge_margin > 0.0) || !(top > bottom)) {
        throw std::invalid_argument("solve_he11: edge margin must lie in (0, 0.5)");
    }
    const double v = v_number(spec);

    // Scan from the core index downward; HE11 is the highest-index root.
    const int n = options.scan_points;
    std::vector<double> grid(static_cast<std::size_t>(n));
    std::vector<double> residual(grid.size());
    for (int i = 0; i < n; ++i) {
        grid[i] = top - (top - bottom) * static_cast<double>(i) / static_cast<double>(n - 1);
        residual[i] = sides_at_b(spec, v, grid[i]).residual();
    }

    auto n_eff_at = [&](double b) { return spec.n_core * std::sqrt(index_ratio2_from_b(spec, b)); };
    double best_lo = n_eff_at(bottom);
    double best_hi = n_eff_at(top);
    bool found_bracket = false;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double f_hi = residual[i];
        const double f_lo = residual[i + 1];
        if (!std::isfinite(f_hi) || !std::isfinite(f_lo)) continue;
        if (f_hi == 0.0 || f_lo == 0.0 || (f_hi > 0.0) != (f_lo > 0.0)) {
            found_bracket = true;
            double root = f_hi == 0.0 ? grid[i] : grid[i + 1];
            bool converged = true;
            if (f_hi != 0.0 && f_lo != 0.0) {
                std::tie(root, std::ignore) =
                    refine(spec, v, Bracket{grid[i + 1], f_lo, grid[i], f_hi}, options, converged);
            }
            best_lo = n_eff_at(grid[i + 1]);
            best_hi = n_eff_at(grid[i]);
            const EquationSides sides = sides_at_b(spec, v, root);
            const double relative = std::abs(sides.residual()) / sides.scale();
            if (relative > pole_rejection_threshold) continue;
            if (!converged || relative >= residual_contract) {
                throw SolverError("solve_he11: bisection did not reach the residual tolerance",
                                  run_length(residual), best_lo, best_hi);
            }

            ModeSolution mode;
            mode.spec = spec;
            mode.k = 2.0 * pi / spec.wavelength_nm;
            mode.beta = n_eff_at(root) * mode.k;
            const Wavenumbers uw = wavenumbers_from_b(v, root);
            mode.h = uw.u / spec.radius_nm;
            mode.q = uw.w / spec.radius_nm;
            const DispersionTerms t = dispersion_terms(uw);
            mode.s = (1.0 / (uw.u * uw.u) + 1.0 / (uw.w * uw.w)) / (t.j_term + t.k_term);
            mode.v_number = v;
            mode.angular_frequency = speed_of_light_nm_per_s * mode.k;
            mode.single_mode = mode.v_number < single_mode_cutoff;
            mode.residual = sides.residual();
            mode.residual_scale = sides.scale();
            return mode;
        }
    }
    throw SolverError(found_bracket ? "solve_he11: every sign change was a pole"
                                    : "solve_he11: no root bracketed in (n_clad, n_core)",
                      run_length(residual), best_lo, best_hi);
}

CylindricalProfile cylindrical_profile(const ModeSolution& mode, double r_nm,
                                       ProfileBranch branch) {
    if (!(r_nm >= 0.0) || !std::isfinite(r_nm)) {
        throw std::invalid_argument("cylindrical_profile: radius must be finite and >= 0");
    }
    const double a = mode.spec.radius_nm;
    const double s = mode.s;
    const bool core = branch == ProfileBranch::core ||
                      (branch == ProfileBranch::automatic && r_nm <= a);
    if (core) {
        const double x = mode.h * r_nm;
        const double j0 = bessel_j(0, x);
        const double j2 = bessel_j(2, x);
        const double scale = mode.beta / (2.0 * mode.h);
        return {Complex(0.0, scale * ((1.0 - s) * j0 - (1.0 + s) * j2)),
                Complex(-scale * ((1.0 - s) * j0 + (1.0 + s) * j2), 0.0),
                Complex(bessel_j(1, x), 0.0)};
    }
    if (r_nm == 0.0) {
        throw std::invalid_argument("cylindrical_profile: cladding branch undefined at r = 0");
    }
    const double x = mode.q * r_nm;
    const double continuity = bessel_j(1, mode.h * a) / bessel_k(1, mode.q * a);
    const double k0 = bessel_k(0, x);
    const double k2 = bessel_k(2, x);
    const double scale = continuity * mode.beta / (2.0 * mode.q);
    return {Complex(0.0, scale * ((1.0 - s) * k0 + (1.0 + s) * k2)),
            Complex(-scale * ((1.0 - s) * k0 - (1.0 + s) * k2), 0.0),
            Complex(continuity * bessel_k(1, x), 0.0)};
}

ComplexVector3 quasi_linear_field(const ModeSolution& mode, ModeAxis axis, double r_nm,
                                  double phi_rad) {
    // Exact trig at multiples of pi/2, where the dipole sits.
    const double quarter = std::nearbyint(phi_rad / (pi / 2.0));
    const bool on_axis = quarter * (pi / 2.0) == phi_rad;
    const SinCos sc = on_axis ? sincos_deg(90.0 * quarter)
                              : SinCos{std::sin(phi_rad), std::cos(phi_rad)};

    const CylindricalProfile p = cylindrical_profile(mode, r_nm);
    const double er = p.e_r.imag();
    const double ephi = p.e_phi.real();
    const double ez = p.e_z.real();

    double radial = 0.0;
    double azimuthal = 0.0;
    double longitudinal = 0.0;
    if (axis == ModeAxis::x_prime) {
        radial = -er * sc.cos;
        azimuthal = -ephi * sc.sin;
        longitudinal = ez * sc.cos;
    } else {
        radial = -er * sc.sin;
        azimuthal = ephi * sc.cos;
        longitudinal = ez * sc.sin;
    }
    const double root2 = std::numbers::sqrt2;
    return {Complex(root2 * (radial * sc.cos - azimuthal * sc.sin), 0.0),
            Complex(root2 * (radial * sc.sin + azimuthal * sc.cos), 0.0),
            Complex(0.0, root2 * longitudinal)};
}

}  // namespace nfpol
