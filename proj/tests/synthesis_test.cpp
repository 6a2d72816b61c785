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

#include <gtest/gtest.h>
#include <omp.h>

#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/synthesis.hpp"
#include "oracle.hpp"

using namespace chainlab;

namespace {

SynthesisOptions quick(int starts = 16) {
    SynthesisOptions o;
    o.starts = starts;
    return o;
}

}  // namespace

TEST(Euler, MatchesExponentials) {
    const double a = 0.7, b = -1.2, c = 2.3;
    const oracle::Mat rz_a = oracle::expm_i(oracle::sz() / 2.0, a);
    const oracle::Mat ry_b = oracle::expm_i(oracle::sy() / 2.0, b);
    const oracle::Mat rz_c = oracle::expm_i(oracle::sz() / 2.0, c);
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(euler_zyz(a, b, c)) - rz_a * ry_b * rz_c), 1e-14);
}

TEST(Assemble, ZeroParametersGivePowerOfEntangler) {
    const std::vector<double> p(18, 0.0);
    const auto g = ideal::g_gate();
    EXPECT_LT(max_abs(assemble_circuit(g, 2, p) - g * g), 1e-14);
    EXPECT_THROW(assemble_circuit(g, 2, std::vector<double>(12, 0.0)), Error);
}

TEST(CnotFidelity, Extremes) {
    EXPECT_NEAR(cnot_fidelity(ideal::cnot()), 1.0, 1e-15);
    ComplexMatrix c = ideal::cnot();
    c *= std::polar(1.0, 1.3);
    EXPECT_NEAR(cnot_fidelity(c), 1.0, 1e-14);
    EXPECT_NEAR(cnot_fidelity(ComplexMatrix::identity(4)), 0.25, 1e-15);
}

TEST(Synthesis, ControlledZNeedsOneUse) {
    const auto r = synthesize_cnot(ideal::controlled_phase(std::numbers::pi), 1, quick(8));
    EXPECT_TRUE(r.success);
    EXPECT_GT(r.fidelity, 1.0 - 1e-6);
    EXPECT_EQ(r.layers.size(), 2u);
    EXPECT_LT(1.0 - cnot_fidelity(assemble_circuit(ideal::controlled_phase(std::numbers::pi), 1, r.parameters)),
              1e-6);
}

TEST(Synthesis, CnotFromTwoCnots) {
    const auto r = synthesize_cnot(ideal::cnot(), 2, quick());
    EXPECT_TRUE(r.success);
}

TEST(Synthesis, GWithFourUses) {
    const auto r = synthesize_cnot(ideal::g_gate(), 4, quick());
    EXPECT_TRUE(r.success);
    EXPECT_GT(r.fidelity, 1.0 - 1e-6);
}

TEST(Synthesis, MFailsWithTwoUses) {
    try {
        synthesize_cnot(ideal::m_gate(), 2, quick());
        FAIL() << "expected SynthesisFailed";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SynthesisFailed);
    }
    const auto best = best_cnot_synthesis(ideal::m_gate(), 2, quick());
    EXPECT_FALSE(best.success);
    EXPECT_LT(best.fidelity, 0.999);
}

TEST(Synthesis, ScanFindsMinimum) {
    const auto scan = scan_use_counts(ideal::controlled_phase(std::numbers::pi), 2, quick(8));
    ASSERT_EQ(scan.attempts.size(), 2u);
    ASSERT_TRUE(scan.minimal_uses.has_value());
    EXPECT_EQ(*scan.minimal_uses, 1);
}

TEST(Synthesis, IndependentOfThreadCount) {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = best_cnot_synthesis(ideal::g_gate(), 2, quick(6));
    omp_set_num_threads(4);
    const auto four = best_cnot_synthesis(ideal::g_gate(), 2, quick(6));
    omp_set_num_threads(saved);
    EXPECT_EQ(one.fidelity, four.fidelity);
    EXPECT_EQ(one.parameters, four.parameters);
}
