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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chainlab/linalg.hpp"
#include "chainlab/optimize.hpp"

namespace chainlab {

struct SynthesisOptions {
    int starts = 64;
    std::uint64_t seed = 1;
    double success_infidelity = 1e-6;
    double failure_fidelity = 0.999;
    optimize::NelderMeadOptions local = {.max_evaluations = 30000, .f_tolerance = 1e-16, .x_tolerance = 1e-12,
                                         .initial_step = 0.6, .restarts = 4};
};

struct SynthesisResult {
    int n_uses = 0;
    double fidelity = 0.0;
    bool success = false;
    std::vector<double> parameters;  // 6 per layer: Euler (z, y, z) for qubit 0 then qubit 1
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> layers;
};

/// Rz(a)·Ry(b)·Rz(c).
ComplexMatrix euler_zyz(double a, double b, double c);

/// L_n·E·L_{n-1}···E·L_0 for the given layer parameters.
ComplexMatrix assemble_circuit(const ComplexMatrix &entangler, int n_uses, std::span<const double> parameters);

/// |tr(CNOT†·C)|²/16.
double cnot_fidelity(const ComplexMatrix &circuit);

/// Best multi-start result, no failure threshold applied. Independent of thread count.
SynthesisResult best_cnot_synthesis(const ComplexMatrix &entangler, int n_uses, const SynthesisOptions &options = {});

/// Throws SynthesisFailed when the best fidelity stays below options.failure_fidelity.
SynthesisResult synthesize_cnot(const ComplexMatrix &entangler, int n_uses, const SynthesisOptions &options = {});

struct UseCountScan {
    std::vector<SynthesisResult> attempts;  // n_uses = 1 .. max_uses
    std::optional<int> minimal_uses;        // smallest count with success
};

UseCountScan scan_use_counts(const ComplexMatrix &entangler, int max_uses, const SynthesisOptions &options = {});

}  // namespace chainlab
