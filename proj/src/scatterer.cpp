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

#include "nfpol/scatterer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace nfpol {
namespace {

constexpr int max_reweightings = 50;
constexpr double weight_floor = 1e-3;  // relative to the largest fitted value
constexpr double degenerate_modulation = 1e-9;

ComplexVector3 combine(Complex l, const ComplexVector3& ul, Complex t, const ComplexVector3& ut) {
    return {l * ul[0] + t * ut[0], l * ul[1] + t * ut[1], l * ul[2] + t * ut[2]};
}

Eigen::Vector3d solve_weighted(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& w) {
    const Eigen::MatrixXd a = w.asDiagonal() * design;
    const Eigen::VectorXd b = w.asDiagonal() * y;
    return a.colPivHouseholderQr().solve(b);
}

}  // namespace

void NanorodModel::validate() const {
    auto finite = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
    if (!finite(alpha_long) || !finite(alpha_trans)) {
        throw std::invalid_argument("nanorod polarizabilities must be finite");
    }
    if (std::abs(alpha_long) == 0.0) {
        throw std::invalid_argument("longitudinal polarizability must be nonzero");
    }
}

RodAxes rod_axes(double theta_deg) {
    const SinCos t = sincos_deg(theta_deg);
    return {{Complex(t.sin), Complex(0.0), Complex(t.cos)},
            {Complex(t.cos), Complex(0.0), Complex(-t.sin)}};
}

ComplexVector3 induced_dipole(const NanorodModel& rod, const DipolePose& pose,
                              const ExcitationField& exc) {
    rod.validate();
    if (!(exc.amplitude > 0.0)) throw std::invalid_argument("excitation amplitude must be > 0");
    const RodAxes axes = rod_axes(pose.theta_deg);
    const SinCos rel = sincos_deg(exc.chi_deg - exc.chi_max_deg);
    const double e_long = exc.amplitude * rel.cos;
    const double e_trans = exc.amplitude * rel.sin;
    return combine(rod.alpha_long * e_long, axes.longitudinal, rod.alpha_trans * e_trans,
                   axes.transverse);
}

std::vector<MalusSample> malus_power(const NanorodModel& rod, std::span<const double> chis_deg,
                                     double chi_max_deg) {
    rod.validate();
    const double pl = std::norm(rod.alpha_long);
    const double pt = std::norm(rod.alpha_trans);
    const double peak = std::max(pl, pt);
    std::vector<MalusSample> out;
    out.reserve(chis_deg.size());
    for (const double chi : chis_deg) {
        const SinCos rel = sincos_deg(chi - chi_max_deg);
        out.push_back({chi, (pl * rel.cos * rel.cos + pt * rel.sin * rel.sin) / peak});
    }
    return out;
}

ExcitationSweep guided_stokes_vs_excitation(const NanorodModel& rod, const DipolePose& pose,
                                            const ModeSolution& mode,
                                            std::span<const double> chis_deg, double chi_max_deg,
                                            Propagation dir) {
    rod.validate();
    pose.validate();
    const double r = pose.dipole_radius(mode.spec);
    const ComplexVector3 x_mode = quasi_linear_field(mode, ModeAxis::x_prime, r, pi / 2.0);
    const ComplexVector3 y_mode = quasi_linear_field(mode, ModeAxis::y_prime, r, pi / 2.0);

    auto dipole_at = [&](double chi) {
        return induced_dipole(rod, pose, ExcitationField{chi, 1.0, chi_max_deg});
    };
    auto stokes_of = [&](const ComplexVector3& p) {
        return stokes_from_jones(guided_jones(project_dipole(x_mode, y_mode, p), pose.alpha_deg, dir));
    };

    const double peak_dipole = std::max(std::abs(rod.alpha_long), std::abs(rod.alpha_trans));
    const StokesVector reference = stokes_of(dipole_at(chi_max_deg));

    ExcitationSweep sweep;
    sweep.rows.reserve(chis_deg.size());
    for (const double chi : chis_deg) {
        ExcitationRow row;
        row.chi_deg = chi;
        const ComplexVector3 p = dipole_at(chi);
        if (norm(p) < no_signal_threshold * peak_dipole) {
            row.has_signal = false;
            sweep.rows.push_back(row);
            continue;
        }
        const StokesVector s = stokes_of(p);
        const StokesVector n = s.normalized();
        row.s1 = n.s1;
        row.s2 = n.s2;
        row.s3 = n.s3;
        row.psi_deg = ellipse_from_stokes(s).psi_deg;
        row.distance_deg = poincare_distance_deg(s, reference);
        sweep.drift_deg = std::max(sweep.drift_deg, row.distance_deg);
        sweep.rows.push_back(row);
    }
    return sweep;
}

MalusFit fit_malus(std::span<const MalusSample> samples) {
    std::set<double> distinct;
    for (const auto& s : samples) distinct.insert(s.chi_deg);
    if (distinct.size() < 3) {
        throw FitError("fit_malus: fewer than 3 distinct polarization angles");
    }
    if (samples.size() < 5) throw std::invalid_argument("fit_malus: need at least 5 samples");
    if (*distinct.rbegin() - *distinct.begin() < 60.0) {
        throw std::invalid_argument("fit_malus: samples must span at least 60 degrees");
    }

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const SinCos two = sincos_deg(2.0 * samples[static_cast<std::size_t>(i)].chi_deg);
        design(i, 0) = 1.0;
        design(i, 1) = two.cos;
        design(i, 2) = two.sin;
        y(i) = samples[static_cast<std::size_t>(i)].power;
    }

    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    Eigen::Vector3d c = solve_weighted(design, y, w);
    for (int it = 0; it < max_reweightings; ++it) {
        const Eigen::VectorXd fitted = (design * c).cwiseAbs();
        const double floor = weight_floor * fitted.maxCoeff();
        if (!(floor > 0.0)) break;
        w = fitted.cwiseMax(floor).cwiseInverse();
        const Eigen::Vector3d next = solve_weighted(design, y, w);
        const double change = (next - c).norm();
        c = next;
        if (change <= 1e-15 * c.norm()) break;
    }

    MalusFit fit;
    const double half_amplitude = std::hypot(c(1), c(2));
    fit.amplitude = 2.0 * half_amplitude;
    fit.floor = c(0) - half_amplitude;
    if (half_amplitude <= degenerate_modulation * std::max(std::abs(c(0)), 1e-300)) {
        fit.degenerate_orientation = true;
        return fit;
    }
    double chi0 = 0.5 * rad_to_deg(std::atan2(c(2), c(1)));
    if (chi0 < 0.0) chi0 += 180.0;
    fit.chi_max_deg = chi0 >= 180.0 ? 0.0 : chi0;
    return fit;
}

void apply_multiplicative_noise(std::span<MalusSample> samples, double rel_sigma,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& s : samples) s.power *= 1.0 + rel_sigma * gauss(rng);
}

std::vector<MalusSample> synthetic_malus_samples(std::span<const double> chis_deg, double chi0_deg,
                                                 double amplitude, double floor,
                                                 double rel_sigma, std::uint64_t seed) {
    std::vector<MalusSample> out;
    out.reserve(chis_deg.size());
    for (const double chi : chis_deg) {
        const double c = sincos_deg(chi - chi0_deg).cos;
        out.push_back({chi, amplitude * c * c + floor});
    }
    apply_multiplicative_noise(out, rel_sigma, seed);
    return out;
}

}  // namespace nfpol
