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

#include "nfpol/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nfpol {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, const std::vector<double>& step,
                          const SimplexOptions& options) {
    const std::size_t n = start.size();
    if (n == 0 || step.size() != n) {
        throw std::invalid_argument("nelder_mead: start and step must be non-empty and equal size");
    }

    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    std::vector<double> vals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto affine = [n](const std::vector<double>& c, const std::vector<double>& p, double t) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (p[i] - c[i]);
        return out;
    };

    SimplexResult result;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) {
                size = std::max(size, std::abs(pts[i][d] - pts[best][d]));
            }
        }
        if (vals[worst] - vals[best] <= options.objective_tolerance &&
            size <= options.size_tolerance) {
            result.converged = true;
        }
        if (result.converged || evals >= options.max_evaluations) {
            result.x = pts[best];
            result.value = vals[best];
            result.evaluations = evals;
            return result;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
        }

        const auto reflected = affine(centroid, pts[worst], -1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < vals[best]) {
            const auto expanded = affine(centroid, pts[worst], -2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < vals[worst];
        const auto contracted = affine(centroid, outside ? reflected : pts[worst], 0.5);
        const double f_contracted = eval(contracted);
        if (f_contracted < (outside ? f_reflected : vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            pts[i] = affine(pts[best], pts[i], 0.5);
            vals[i] = eval(pts[i]);
        }
    }
}

}  // namespace nfpol
