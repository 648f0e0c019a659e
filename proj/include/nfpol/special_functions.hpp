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

// Real-argument Bessel functions used by the step-index mode equations.
// Orders 0, 1 and 2 are what the solver needs; higher non-negative orders
// work but are not exercised by the tests.
//
// All functions throw std::domain_error on a negative order, a non-finite
// argument, or an argument outside the function's domain.

namespace nfpol::special {

/// J_n(x) for x >= 0.
double bessel_j(int n, double x);

/// J_n'(x) for x >= 0, from (J_{n-1} - J_{n+1}) / 2 with J_{-1} = -J_1.
double bessel_j_prime(int n, double x);

/// K_n(x) for x > 0.
double bessel_k(int n, double x);

/// K_n'(x) = -(K_{n-1} + K_{n+1}) / 2 for x > 0, with K_{-1} = K_1.
double bessel_k_prime(int n, double x);

}  // namespace nfpol::special
