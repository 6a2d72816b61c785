// Copyright 2026 The chainlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chainlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chainlab::optimize {

ScalarOptimum golden_section_maximize(const std::function<double(double)> &f, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    const double mid = 0.5 * (lo + hi);
    return {mid, f(mid)};
}

namespace {

Optimum nelder_mead_once(const Objective &f, const std::vector<double> &x0, double step, int budget,
                         const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    const double dn = static_cast<double>(n);
    // Gao & Han coefficients keep the simplex from degenerating in high dimension.
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dn;
    const double gamma = 0.75 - 1.0 / (2.0 * dn);
    const double delta = 1.0 - 1.0 / dn;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    while (evals < budget) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
            }
        }
        if (values[worst] - values[best] <= options.f_tolerance && diameter <= options.x_tolerance) break;
        if (diameter <= options.x_tolerance * 1e-3) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / dn;
        }
        for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
        const double fr = eval(trial);
        if (fr < values[best]) {
            for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        for (std::size_t k = 0; k < n; ++k) {
            trial2[k] = outside ? centroid[k] + gamma * (trial[k] - centroid[k])
                                : centroid[k] - gamma * (centroid[k] - simplex[worst][k]);
        }
        const double fc = eval(trial2);
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = trial2;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = eval(simplex[i]);
        }
    }
    const auto it = std::min_element(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(it - values.begin());
    return {simplex[idx], *it, evals};
}

}  // namespace

Optimum nelder_mead(const Objective &f, std::vector<double> x0, const NelderMeadOptions &options) {
    Optimum best{x0, f(x0), 1};
    double step = options.initial_step;
    for (int round = 0; round <= options.restarts && best.evaluations < options.max_evaluations; ++round) {
        const int budget = options.max_evaluations - best.evaluations;
        Optimum next = nelder_mead_once(f, best.x, step, budget, options);
        const bool improved = next.value < best.value;
        best.evaluations += next.evaluations;
        if (improved) {
            best.x = std::move(next.x);
            best.value = next.value;
        }
        step = std::max(step * 0.1, 1e-6);
    }
    return best;
}

}  // namespace chainlab::optimize
