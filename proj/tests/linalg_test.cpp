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
#include "chainlab/linalg.hpp"
#include "chainlab/model.hpp"
#include "oracle.hpp"

using namespace chainlab;
using namespace std::complex_literals;

namespace {

double reconstruction_defect(const ComplexMatrix &h, const EigenSystem &e) {
    ComplexMatrix d(h.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) = e.eigenvalues[i];
    return max_abs(e.eigenvectors * d * e.eigenvectors.adjoint() - h);
}

}  // namespace

TEST(HermitianEig, PauliZSpectrum) {
    const auto e = hermitian_eig(pauli(Axis::Z));
    ASSERT_EQ(e.eigenvalues.size(), 2u);
    EXPECT_NEAR(e.eigenvalues[0], -1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-14);
}

TEST(HermitianEig, ZeroMatrixReconstructsExactly) {
    const ComplexMatrix z(4);
    const auto e = hermitian_eig(z);
    for (double v : e.eigenvalues) EXPECT_EQ(v, 0.0);
    EXPECT_LT(unitarity_defect(e.eigenvectors), 1e-14);
    EXPECT_LT(reconstruction_defect(z, e), 1e-14);
}

TEST(HermitianEig, SingletTripletSplitting) {
    ComplexMatrix h(4);
    for (auto axis : {Axis::X, Axis::Y, Axis::Z}) h += pauli_site(axis, 0, 2) * pauli_site(axis, 1, 2);
    const auto e = hermitian_eig(h);
    EXPECT_NEAR(e.eigenvalues[0], -3.0, 1e-12);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(e.eigenvalues[static_cast<std::size_t>(k)], 1.0, 1e-12);
}

TEST(HermitianEig, RandomMatricesSatisfyContract) {
    std::mt19937_64 rng(7);
    for (int dim : {3, 8, 32}) {
        const auto h = oracle::random_hermitian(dim, rng);
        const auto e = hermitian_eig(h);
        EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
        EXPECT_LT(unitarity_defect(e.eigenvectors), 1e-10);
        EXPECT_LT(reconstruction_defect(h, e), 1e-10 * max_abs(h));
    }
}

TEST(HermitianEig, RejectsNonHermitianInput) {
    ComplexMatrix a(2);
    a(0, 1) = 1.0;
    try {
        hermitian_eig(a);
        FAIL() << "expected NonHermitianInput";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonHermitianInput);
    }
}

TEST(SymmetricEig, MatchesComplexPath) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    const std::size_t n = 12;
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = g(rng);
    }
    const auto r = symmetric_eig(a, n);
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n * n; ++i) h.data()[i] = a[i];
    const auto c = hermitian_eig(h);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(r.eigenvalues[k], c.eigenvalues[k], 1e-12);
}

TEST(ExpmI, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(1);
    const auto h = oracle::random_hermitian(4, rng);
    EXPECT_LT(max_abs(expm_i(h, 0.0) - ComplexMatrix::identity(4)), 1e-14);
}

TEST(ExpmI, PauliZQuarterTurn) {
    const auto u = expm_i(pauli(Axis::Z), std::numbers::pi / 2);
    EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -std::numbers::pi / 2)), 1e-14);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, std::numbers::pi / 2)), 1e-14);
    EXPECT_LT(std::abs(u(0, 1)), 1e-14);
}

TEST(ExpmI, RandomPropagatorIsUnitary) {
    std::mt19937_64 rng(11);
    const auto h = oracle::random_hermitian(8, rng);
    EXPECT_LT(unitarity_defect(expm_i(h, 1.7)), 1e-10);
}

TEST(ExpmI, MatchesIndependentExponential) {
    std::mt19937_64 rng(5);
    const auto h = oracle::random_hermitian(16, rng);
    const auto ref = oracle::expm_i(oracle::to_eigen(h), 0.83);
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(expm_i(h, 0.83)) - ref), 1e-12);
}

TEST(ExpmI, GroupProperty) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = oracle::random_hermitian(6, rng);
        const double t1 = u(rng);
        const double t2 = u(rng);
        EXPECT_LT(op_distance(expm_i(h, t1) * expm_i(h, t2), expm_i(h, t1 + t2)), 1e-9);
    }
}

TEST(ExpmI, PreservesNorm) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    const auto h = oracle::random_hermitian(32, rng);
    ComplexVector v(32);
    for (auto &z : v) z = {g(rng), g(rng)};
    const double n0 = vector_norm(v);
    for (auto &z : v) z /= n0;
    EXPECT_NEAR(vector_norm(expm_i(h, 2.3) * std::span<const Complex>(v)), 1.0, 1e-12);
}

TEST(OpDistance, SelfAndGlobalPhase) {
    std::mt19937_64 rng(19);
    const auto u = oracle::from_eigen(oracle::random_unitary(4, rng));
    EXPECT_LT(op_distance(u, u), 1e-12);
    EXPECT_LT(op_distance(u, u * std::polar(1.0, std::numbers::pi / 7)), 1e-9);
}

TEST(OpDistance, IdentityAgainstBitFlip) {
    // Oracle: brute-force scan of the global phase.
    const auto id = ComplexMatrix::identity(2);
    const auto x = pauli(Axis::X);
    double best = 1e9;
    for (int k = 0; k < 20000; ++k) {
        const Complex p = std::polar(1.0, 2 * std::numbers::pi * k / 20000);
        best = std::min(best, max_abs(id - x * p));
    }
    EXPECT_NEAR(op_distance(id, x), best, 1e-6);
    EXPECT_NEAR(op_distance(id, x), 1.0, 1e-9);
}

TEST(OpDistance, DimensionMismatch) {
    try {
        op_distance(ComplexMatrix::identity(2), ComplexMatrix::identity(4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(Kron, MatchesOracle) {
    std::mt19937_64 rng(23);
    const auto a = oracle::random_unitary(2, rng);
    const auto b = oracle::random_unitary(4, rng);
    const auto k = kron(oracle::from_eigen(a), oracle::from_eigen(b));
    EXPECT_LT(oracle::max_abs(oracle::to_eigen(k) - oracle::kron(a, b)), 1e-14);
}

TEST(PolarUnitary, ProjectsPerturbedUnitary) {
    std::mt19937_64 rng(29);
    const auto u = oracle::from_eigen(oracle::random_unitary(4, rng));
    auto v = u;
    v(1, 2) += 1e-3;
    const auto p = polar_unitary(v);
    EXPECT_LT(unitarity_defect(p), 1e-12);
    EXPECT_LT(max_abs(p - u), 2e-3);
}

TEST(NearestKronecker, RecoversProductFactors) {
    std::mt19937_64 rng(31);
    const auto a = oracle::from_eigen(oracle::random_unitary(2, rng));
    const auto b = oracle::from_eigen(oracle::random_unitary(8, rng));
    const auto [fa, fb] = nearest_kronecker(kron(a, b), 2);
    EXPECT_LT(op_distance(fa, a), 1e-10);
    EXPECT_LT(op_distance(fb, b), 1e-10);
    EXPECT_LT(max_abs(kron(fa, fb) - kron(a, b)), 1e-10);
}

TEST(Commutator, PauliAlgebra) {
    const auto c = commutator(pauli(Axis::X), pauli(Axis::Y));
    EXPECT_LT(max_abs(c - pauli(Axis::Z) * Complex(2i)), 1e-14);
}
