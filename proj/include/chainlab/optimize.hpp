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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace chainlab::optimize {

struct ScalarOptimum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
ScalarOptimum golden_section_maximize(const std::function<double(double)> &f, double lo, double hi, double tol);

struct NelderMeadOptions {
    int max_evaluations = 20000;
    double f_tolerance = 1e-15;   // spread of simplex values
    double x_tolerance = 1e-11;   // simplex diameter
    double initial_step = 0.5;
    int restarts = 3;             // re-seed the simplex around the incumbent
};

struct Optimum {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes f with the adaptive Nelder–Mead simplex (dimension-scaled
/// coefficients), restarting from the incumbent to escape collapsed simplices.
Optimum nelder_mead(const Objective &f, std::vector<double> x0, const NelderMeadOptions &options = {});

}  // namespace chainlab::optimize
