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

#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/schemes.hpp"
#include "chainlab/zeno.hpp"
#include "oracle.hpp"

using namespace chainlab;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no chainlab::Error thrown";
    return ErrorKind::IoFailure;
}

const ZeemanLevels kLevels = ZeemanLevels::from_delta(1000.0, 1.0);

// |1>_L population of the second arch-2 qubit after t, starting from |00>_L.
double transfer(double delta, double t) {
    const Scheme s = arch2_single_qubit_schedule(kLevels, 1.0, delta, t);
    const Evolver ev(s.chain);
    const std::size_t in[] = {s.encoding.physical_index(0)};
    return std::norm(ev.evolve_columns(s.schedule, in)(s.encoding.physical_index(1), 0));
}

}  // namespace

TEST(Resonant, ZeroDurationIsIdentity) {
    EXPECT_TRUE(resonant_schedule({0.0, 1.0}, 0.0).segments.empty());
    const Scheme s = arch2_two_qubit_schedule(kLevels, 1.0, 0.0);
    EXPECT_LT(max_abs(propagator(s.chain, s.schedule) - ComplexMatrix::identity(64)), 1e-15);
}

TEST(SingleQubit, RabiRateMatchesTwoLevelModel) {
    // ↓↑ and ↑↓ are degenerate at δ = 0 and coupled by 2J
    const double k = measure_rabi_rate(kLevels, 1.0);
    EXPECT_NEAR(k, 2.0, 2e-3);
    // the residual shift is a 1/Δ dressing effect
    const double k100 = measure_rabi_rate(ZeemanLevels::from_delta(100.0, 1.0), 1.0);
    EXPECT_NEAR((k100 - 2.0) / (k - 2.0), 10.0, 0.5);
    const oracle::Mat h = 2.0 * oracle::sx();
    const oracle::Mat u = oracle::expm_i(h, std::numbers::pi / (2.0 * k));
    EXPECT_NEAR(std::norm(u(1, 0)), 1.0, 1e-4);
}

TEST(SingleQubit, HalfPeriodFlipsQuarterSplits) {
    const double k = measure_rabi_rate(kLevels, 1.0);
    EXPECT_GT(transfer(0.0, std::numbers::pi / (2.0 * k)), 0.999);
    EXPECT_NEAR(transfer(0.0, std::numbers::pi / (4.0 * k)), 0.5, 1e-3);
}

TEST(SingleQubit, DetuningBoundsTransfer) {
    const double delta = 4.0;
    const double bound = 4.0 / (4.0 + delta * delta);  // (2J)^2 / ((2J)^2 + δ^2)
    double worst = 0.0;
    for (int i = 1; i <= 60; ++i) worst = std::max(worst, transfer(delta, 0.05 * i));
    EXPECT_LT(worst, bound + 1e-2);
    EXPECT_GT(worst, 0.5 * bound);
}

TEST(SixSettings, ListAndLabels) {
    const auto s = six_settings(kLevels, 1.0, 1.0);
    ASSERT_EQ(s.size(), 6u);
    for (const auto &x : s) {
        EXPECT_NE(x.label, "(B,B)");
        EXPECT_EQ(x.duration, 1.0);
    }
    EXPECT_EQ(s[1].label, "(B,A+J)");
    EXPECT_DOUBLE_EQ(s[1].eps_even, kLevels.B);
    EXPECT_DOUBLE_EQ(s[1].eps_odd, kLevels.A + 1.0);
}

TEST(SixSettings, RejectsBadGrouping) {
    const auto s = six_settings(kLevels, 1.0, 1.0).front();
    EXPECT_EQ(kind_of([&] { arch3_apply(s, make_chain("ABC", 1.0, kLevels)); }), ErrorKind::InvalidGrouping);
    EXPECT_EQ(kind_of([&] { arch3_apply(s, make_chain("ABAB", 1.0, kLevels)); }), ErrorKind::InvalidGrouping);
    const auto sched = arch3_apply(s, make_chain("ABCABC", 1.0, kLevels));
    ASSERT_EQ(sched.segments.size(), 1u);
    EXPECT_DOUBLE_EQ(sched.segments[0].energies[1], s.eps_even);
    EXPECT_DOUBLE_EQ(sched.segments[0].energies[4], s.eps_odd);
}

TEST(SixSettings, OddQubitsShareTheirGate) {
    const auto settings = six_settings(kLevels, 1.0, 1.0);
    const auto rep = six_setting_isolation(kLevels, 1.0, settings[1]);
    ASSERT_EQ(rep.qubit_gates.size(), 4u);
    EXPECT_LT(rep.odd_spread, 1e-6);
    EXPECT_LT(rep.idle_distance[0], 1e-2);
    EXPECT_LT(rep.idle_distance[2], 1e-2);
    // the tuned qubits did something
    EXPECT_GT(rep.idle_distance[1], 0.1);
}

TEST(Barriers, FiveSpinPattern) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 1);
    const auto psi = initialize_barriers(z.chain, z.encoding);
    const auto idx = basis_index({Spin::Up, Spin::Up, Spin::Down, Spin::Up, Spin::Up});
    EXPECT_EQ(psi[idx], Complex(1.0));
    EXPECT_NEAR(vector_norm(psi), 1.0, 1e-15);
}

TEST(Barriers, OneDownPerTriple) {
    const auto chain = arch2_chain(kLevels, 1.0, 3);
    const auto psi = initialize_barriers(chain, arch2_encoding(3));
    std::size_t idx = 0;
    while (psi[idx] == Complex(0.0)) ++idx;
    const auto spins = basis_spins(idx, 9);
    for (int t = 0; t < 3; ++t) {
        int downs = 0;
        for (int s = 0; s < 3; ++s) downs += spins[static_cast<std::size_t>(3 * t + s)] == Spin::Down;
        EXPECT_EQ(downs, 1);
    }
}

TEST(Refocus, IsingCancelsExactly) {
    const auto chain = make_chain("AB", 1.0, ZeemanLevels::from_delta(3.0, 1.0));
    for (double tau : {0.05, 0.3, 1.1}) EXPECT_LT(refocus_residual(chain, tau, 3), 1e-12);
    // without pulses the same coupling entangles: π/4 of J zz is a CZ class
    const auto u = expm_i(build_effective_ising(chain, chain.passive_energies()), std::numbers::pi / 4.0);
    const auto inv = local_equivalence_invariants(u);
    EXPECT_NEAR(std::abs(inv.g1), 0.0, 1e-12);
    EXPECT_NEAR(inv.g2, 1.0, 1e-12);
}

TEST(Refocus, HeisenbergKeepsExchangeResidue) {
    const auto chain = make_chain("AA", 1.0, ZeemanLevels{});
    const std::vector<double> taus = {0.05, 0.1};
    const auto pts = refocus_demo(chain, taus, 1.0, Coupling::Heisenberg);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].cycles, 10);
    for (const auto &p : pts) EXPECT_GT(p.residual, 1e-2);
    EXPECT_EQ(kind_of([&] { refocus_demo(make_chain("ABA", 1.0, kLevels), taus, 1.0); }), ErrorKind::InvalidChain);
}
