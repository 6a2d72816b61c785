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

#include "chainlab/synthesis.hpp"

#include <numbers>
#include <random>

#include "chainlab/errors.hpp"
#include "chainlab/gates.hpp"

namespace chainlab {

using namespace std::complex_literals;

ComplexMatrix euler_zyz(double a, double b, double c) {
    const double cb = std::cos(b / 2);
    const double sb = std::sin(b / 2);
    const Complex pa = std::polar(1.0, a / 2);
    const Complex pc = std::polar(1.0, c / 2);
    return ComplexMatrix::from_rows({{cb / (pa * pc), -sb * pc / pa}, {sb * pa / pc, cb * pa * pc}});
}

namespace {

ComplexMatrix layer(std::span<const double> p) {
    return kron(euler_zyz(p[0], p[1], p[2]), euler_zyz(p[3], p[4], p[5]));
}

void check_entangler(const ComplexMatrix &e, int n_uses) {
    if (e.rows() != 4 || !e.is_square()) throw Error(ErrorKind::DimensionMismatch, "two-qubit entangler expected");
    if (unitarity_defect(e) > 1e-8) throw Error(ErrorKind::NotUnitary, "entangler is not unitary");
    if (n_uses < 1) throw Error(ErrorKind::SynthesisFailed, "at least one entangler use is required");
}

}  // namespace

ComplexMatrix assemble_circuit(const ComplexMatrix &entangler, int n_uses, std::span<const double> parameters) {
    if (parameters.size() != static_cast<std::size_t>(6 * (n_uses + 1))) {
        throw Error(ErrorKind::LengthMismatch, "six parameters per local layer");
    }
    ComplexMatrix c = layer(parameters.subspan(0, 6));
    for (int k = 1; k <= n_uses; ++k) c = layer(parameters.subspan(static_cast<std::size_t>(6 * k), 6)) * (entangler * c);
    return c;
}

double cnot_fidelity(const ComplexMatrix &circuit) {
    static const ComplexMatrix cnot_adj = ideal::cnot().adjoint();
    return std::norm((cnot_adj * circuit).trace()) / 16.0;
}

SynthesisResult best_cnot_synthesis(const ComplexMatrix &entangler, int n_uses, const SynthesisOptions &options) {
    check_entangler(entangler, n_uses);
    if (options.starts < 1) throw Error(ErrorKind::SynthesisFailed, "start budget must be positive");
    const std::size_t n_par = static_cast<std::size_t>(6 * (n_uses + 1));
    auto objective = [&](std::span<const double> x) {
        return 1.0 - cnot_fidelity(assemble_circuit(entangler, n_uses, x));
    };
    std::vector<optimize::Optimum> results(static_cast<std::size_t>(options.starts));
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < options.starts; ++s) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(s)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::vector<double> x0(n_par);
        for (auto &v : x0) v = angle(rng);
        results[static_cast<std::size_t>(s)] = optimize::nelder_mead(objective, std::move(x0), options.local);
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
        if (results[s].value < results[best].value) best = s;
    }
    SynthesisResult out;
    out.n_uses = n_uses;
    out.parameters = results[best].x;
    out.fidelity = 1.0 - results[best].value;
    out.success = results[best].value < options.success_infidelity;
    for (int k = 0; k <= n_uses; ++k) {
        const auto p = std::span<const double>(out.parameters).subspan(static_cast<std::size_t>(6 * k), 6);
        out.layers.emplace_back(euler_zyz(p[0], p[1], p[2]), euler_zyz(p[3], p[4], p[5]));
    }
    return out;
}

SynthesisResult synthesize_cnot(const ComplexMatrix &entangler, int n_uses, const SynthesisOptions &options) {
    auto r = best_cnot_synthesis(entangler, n_uses, options);
    if (r.fidelity < options.failure_fidelity) {
        throw Error(ErrorKind::SynthesisFailed, "best CNOT fidelity " + std::to_string(r.fidelity) + " with " +
                                                    std::to_string(n_uses) + " uses");
    }
    return r;
}

UseCountScan scan_use_counts(const ComplexMatrix &entangler, int max_uses, const SynthesisOptions &options) {
    UseCountScan scan;
    for (int k = 1; k <= max_uses; ++k) {
        scan.attempts.push_back(best_cnot_synthesis(entangler, k, options));
        if (scan.attempts.back().success && !scan.minimal_uses) scan.minimal_uses = k;
    }
    return scan;
}

}  // namespace chainlab
