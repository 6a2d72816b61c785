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
#include <random>

#include "chainlab/errors.hpp"
#include "chainlab/evolve.hpp"
#include "chainlab/model.hpp"
#include "oracle.hpp"

using namespace chainlab;

namespace {

ChainSpec chain_of(std::string_view roles, double delta = 100.0) {
    return make_chain(roles, 1.0, ZeemanLevels::from_delta(delta, 1.0));
}

StateVector random_state(std::size_t dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector v(dim);
    for (auto &z : v) z = {g(rng), g(rng)};
    const double n = vector_norm(v);
    for (auto &z : v) z /= n;
    return v;
}

}  // namespace

TEST(Propagator, SingleSegmentEqualsDenseExponential) {
    const auto chain = chain_of("ABCAB", 3.0);
    auto e = chain.passive_energies();
    e[2] = 0.7;
    const auto u = propagator(chain, ZeemanSchedule{}.then(1.3, e));
    EXPECT_LT(max_abs(u - expm_i(build_heisenberg(chain, e), 1.3)), 1e-11);
    const auto ui = propagator(chain, ZeemanSchedule{}.then(1.3, e), Coupling::EffectiveIsing);
    EXPECT_LT(max_abs(ui - expm_i(build_effective_ising(chain, e), 1.3)), 1e-11);
}

TEST(Propagator, SplitSegmentsCompose) {
    const auto chain = chain_of("ABAB", 2.0);
    const auto e = chain.passive_energies();
    const auto one = propagator(chain, ZeemanSchedule{}.then(1.5, e));
    const auto two = propagator(chain, ZeemanSchedule{}.then(0.4, e).then(1.1, e));
    EXPECT_LT(max_abs(one - two), 1e-11);
}

TEST(Propagator, LaterSegmentsActOnTheLeft) {
    const auto chain = chain_of("AB", 2.0);
    const std::vector<double> e1 = {0.0, 1.0};
    const std::vector<double> e2 = {0.5, -0.3};
    const auto u = propagator(chain, ZeemanSchedule{}.then(0.7, e1).then(0.9, e2));
    const auto ref = expm_i(build_heisenberg(chain, e2), 0.9) * expm_i(build_heisenberg(chain, e1), 0.7);
    EXPECT_LT(max_abs(u - ref), 1e-12);
}

TEST(Propagator, NegatedHamiltonianUndoes) {
    const auto chain = chain_of("ABC", 5.0);
    const auto h = build_heisenberg(chain, chain.passive_energies());
    ComplexMatrix neg = h;
    neg *= -1.0;
    EXPECT_LT(max_abs(expm_i(neg, 0.8) * expm_i(h, 0.8) - ComplexMatrix::identity(8)), 1e-12);
}

TEST(Propagator, EmptyScheduleIsIdentity) {
    const auto chain = chain_of("ABAB");
    EXPECT_EQ(max_abs(propagator(chain, {}) - ComplexMatrix::identity(16)), 0.0);
}

TEST(Propagator, RejectsBadSegments) {
    const auto chain = chain_of("AB");
    const Evolver ev(chain);
    try {
        ev.propagator(ZeemanSchedule{}.then(1.0, {0.0}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
    }
    try {
        ev.propagator(ZeemanSchedule{}.then(-1.0, {0.0, 0.0}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidChain);
    }
}

TEST(Evolve, EigenstateOnlyGainsPhase) {
    const auto chain = chain_of("ABA", 4.0);
    const auto e = chain.passive_energies();
    const auto eig = hermitian_eig(build_heisenberg(chain, e));
    StateVector psi = eig.eigenvectors.column(3);
    const auto out = evolve(chain, ZeemanSchedule{}.then(2.2, e), psi);
    for (std::size_t i = 0; i < psi.size(); ++i) EXPECT_NEAR(std::abs(out[i]), std::abs(psi[i]), 1e-12);
}

TEST(Evolve, EmptyScheduleLeavesStateUnchanged) {
    const auto chain = chain_of("ABAB");
    const auto psi = random_state(16, 1);
    const auto out = evolve(chain, {}, psi);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(out[i], psi[i]);
}

TEST(Evolve, MatchesPropagatorColumns) {
    const auto chain = chain_of("ABCABC", 6.0);
    auto e = chain.passive_energies();
    e[1] = 12.5;
    const ZeemanSchedule s = ZeemanSchedule{}.then(0.6, chain.passive_energies()).then(1.2, e);
    const Evolver ev(chain);
    const auto u = ev.propagator(s);
    const auto psi = random_state(64, 4);
    const auto out = ev.evolve(s, psi);
    const auto ref = u * std::span<const Complex>(psi);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_LT(std::abs(out[i] - ref[i]), 1e-11);
    const std::size_t inputs[] = {5, 17, 40};
    const auto cols = ev.evolve_columns(s, inputs);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 64; ++i) EXPECT_LT(std::abs(cols(i, j) - u(i, inputs[j])), 1e-11);
    }
}

TEST(Evolve, DimensionMismatch) {
    try {
        evolve(chain_of("AB"), {}, StateVector(3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(Evolve, NormAndMagnetisationConserved) {
    const auto chain = chain_of("ABCABCAB", 20.0);
    auto e1 = chain.passive_energies();
    auto e2 = e1;
    e2[1] = e2[2] + 1.0;
    e2[4] = 0.0;
    const ZeemanSchedule s = ZeemanSchedule{}.then(0.9, e1).then(1.4, e2).then(0.3, e1);
    const auto psi = random_state(256, 9);
    const auto out = evolve(chain, s, psi);
    EXPECT_NEAR(vector_norm(out), 1.0, 1e-10);
    EXPECT_NEAR(total_sigma_z_expectation(out, 8), total_sigma_z_expectation(psi, 8), 1e-9);
}

TEST(Evolve, TimeReversedScheduleReturnsIdentity) {
    const auto chain = chain_of("ABCAB", 8.0);
    auto e1 = chain.passive_energies();
    auto e2 = e1;
    e2[1] = 3.0;
    const ZeemanSchedule fwd = ZeemanSchedule{}.then(0.5, e1).then(0.8, e2);
    const auto u = propagator(chain, fwd);
    // reversed order with every Hamiltonian negated
    const auto h1 = build_heisenberg(chain, e1);
    const auto h2 = build_heisenberg(chain, e2);
    ComplexMatrix n1 = h1, n2 = h2;
    n1 *= -1.0;
    n2 *= -1.0;
    const auto back = expm_i(n1, 0.5) * expm_i(n2, 0.8);
    EXPECT_LT(max_abs(back * u - ComplexMatrix::identity(32)), 1e-9);
}

TEST(Evolve, PassiveChainStaysNearProductStates) {
    // Leakage out of a product state in the passive nine-spin chain scales as (J/Δ)^2.
    std::vector<double> leak;
    for (double delta : {100.0, 1000.0}) {
        const auto chain = make_chain("ABABABABA", 1.0, ZeemanLevels::from_delta(delta, 1.0));
        const Evolver ev(chain);
        const std::size_t in[] = {basis_index({Spin::Up, Spin::Down, Spin::Up, Spin::Down, Spin::Up, Spin::Up,
                                               Spin::Down, Spin::Up, Spin::Down})};
        double worst = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const auto c = ev.evolve_columns(ZeemanSchedule{}.then(0.1 * k, chain.passive_energies()), in);
            worst = std::max(worst, 1.0 - std::norm(c(in[0], 0)));
        }
        leak.push_back(worst);
    }
    const double c_fit = leak[0] * 100.0 * 100.0;  // C in leakage < C (J/Δ)^2
    EXPECT_LT(c_fit, 50.0);
    EXPECT_LT(leak[1], 2.0 * c_fit / (1000.0 * 1000.0));
}

TEST(Evolve, RampSegmentApproachesFineSteps) {
    const auto chain = chain_of("ABA", 5.0);
    auto to = chain.passive_energies();
    to[1] = 1.0;
    Segment ramp{1.0, chain.passive_energies(), to, 64};
    Segment coarse = ramp;
    coarse.ramp_steps = 8;
    const auto fine = propagator(chain, ZeemanSchedule{{ramp}});
    const auto rough = propagator(chain, ZeemanSchedule{{coarse}});
    EXPECT_LT(unitarity_defect(fine), 1e-10);
    EXPECT_LT(op_distance(fine, rough), 5e-2);
    EXPECT_GT(op_distance(fine, propagator(chain, ZeemanSchedule{}.then(1.0, chain.passive_energies()))), 1e-3);
}

TEST(SegmentCache, ReusesFactorizations) {
    auto cache = std::make_shared<SegmentCache>();
    const auto chain = chain_of("ABAB");
    const Evolver ev(chain, Coupling::Heisenberg, cache);
    const auto e = chain.passive_energies();
    for (int k = 1; k <= 10; ++k) ev.propagator(ZeemanSchedule{}.then(0.1 * k, e));
    EXPECT_EQ(cache->size(), 1u);
}

TEST(RotatingFrame, ZeemanOnlyEvolutionStripsToIdentity) {
    const auto e = std::vector<double>{0.3, 1.7, -0.4};
    ComplexMatrix u(8);
    const auto ph = frame_phases(3, e, 2.1);
    for (std::size_t i = 0; i < 8; ++i) u(i, i) = std::conj(ph[i]);
    const auto chain = make_chain("ABC", 1.0, {});
    EXPECT_LT(max_abs(rotating_frame_strip(u, chain, e, 2.1) - ComplexMatrix::identity(8)), 1e-14);
    // matches an independent exponential of the Zeeman term
    oracle::Mat hz = oracle::Mat::Zero(8, 8);
    for (int i = 0; i < 3; ++i) hz += e[static_cast<std::size_t>(i)] * oracle::embed(oracle::sz(), i, 3);
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(u) - oracle::expm_i(hz, 2.1)), 1e-13);
}

TEST(RotatingFrame, PreservesUnitarity) {
    const auto chain = chain_of("ABCA", 3.0);
    const auto u = propagator(chain, ZeemanSchedule{}.then(0.9, chain.passive_energies()));
    EXPECT_LT(unitarity_defect(rotating_frame_strip(u, chain, chain.passive_energies(), 0.9)), 1e-10);
}
