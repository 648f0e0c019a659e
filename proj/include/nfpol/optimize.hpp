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

#include <functional>
#include <vector>

namespace nfpol {

struct SimplexOptions {
    double objective_tolerance = 1e-12;  ///< spread of f over the simplex
    double size_tolerance = 1e-10;       ///< max vertex distance from the best vertex
    int max_evaluations = 20000;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). The initial
/// simplex is `start` plus `step[i]` along each coordinate. Deterministic.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, const std::vector<double>& step,
                          const SimplexOptions& options = {});

}  // namespace nfpol
