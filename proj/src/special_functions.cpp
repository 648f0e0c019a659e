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

#include "nfpol/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace nfpol::special {
namespace {

void check_order(int n, const char* fn) {
    if (n < 0) {
        throw std::domain_error(std::string(fn) + ": negative order " + std::to_string(n));
    }
}

void check_argument(double x, bool allow_zero, const char* fn) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": non-finite argument");
    }
    if (x < 0.0 || (!allow_zero && x == 0.0)) {
        throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                                " outside domain");
    }
}

// Signed orders for the derivative recurrences; valid for n >= -1.
double j_any(int n, double x) {
    if (n < 0) return -boost::math::cyl_bessel_j(1, x);
    return boost::math::cyl_bessel_j(n, x);
}

double k_any(int n, double x) {
    return boost::math::cyl_bessel_k(n < 0 ? -n : n, x);
}

}  // namespace

double bessel_j(int n, double x) {
    check_order(n, "bessel_j");
    check_argument(x, true, "bessel_j");
    return boost::math::cyl_bessel_j(n, x);
}

double bessel_j_prime(int n, double x) {
    check_order(n, "bessel_j_prime");
    check_argument(x, true, "bessel_j_prime");
    return 0.5 * (j_any(n - 1, x) - j_any(n + 1, x));
}

double bessel_k(int n, double x) {
    check_order(n, "bessel_k");
    check_argument(x, false, "bessel_k");
    return boost::math::cyl_bessel_k(n, x);
}

double bessel_k_prime(int n, double x) {
    check_order(n, "bessel_k_prime");
    check_argument(x, false, "bessel_k_prime");
    return -0.5 * (k_any(n - 1, x) + k_any(n + 1, x));
}

}  // namespace nfpol::special
