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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfpol {

using Complex = std::complex<double>;

/// Complex field or dipole vector. Components are (x', y', z) unless stated.
using ComplexVector3 = std::array<Complex, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light_nm_per_s = 299792458.0e9;

constexpr double deg_to_rad(double deg) noexcept { return deg * (pi / 180.0); }
constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / pi); }

struct SinCos {
    double sin;
    double cos;
};

/// sin and cos of an angle in degrees. Exact at multiples of 90 degrees and
/// exactly odd/even under sign flips of the argument.
inline SinCos sincos_deg(double deg) {
    const double rem = std::remainder(deg, 90.0);  // exact, in [-45, 45]
    const double quadrant = (deg - rem) / 90.0;
    const double r = deg_to_rad(rem);
    const double s = std::sin(r);
    const double c = std::cos(r);
    long q = std::lround(std::fmod(quadrant, 4.0));
    if (q < 0) q += 4;
    switch (q) {
        case 0: return {s, c};
        case 1: return {c, -s};
        case 2: return {-s, -c};
        default: return {-c, s};
    }
}

/// Raised when a numerical procedure fails (no bracketed root, iteration cap).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Complex dot(const ComplexVector3& a, const ComplexVector3& b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const ComplexVector3& v) noexcept {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

}  // namespace nfpol
