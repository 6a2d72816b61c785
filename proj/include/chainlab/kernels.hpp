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

#include <span>

#include "chainlab/linalg.hpp"

// Dense kernels used on every propagation path. The serial versions are the
// reference implementation; tests check the OpenMP versions against them.
namespace chainlab::kernels {

namespace serial {
void matmul(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
void matvec(const ComplexMatrix &a, std::span<const Complex> x, std::span<Complex> y);
void kron(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
/// y = V diag(e^{-i λ t}) Vᵀ x for real orthogonal V (row-major, dim x dim).
void spectral_apply(std::span<const double> vectors, std::span<const double> values, double t,
                    std::span<const Complex> x, std::span<Complex> y);
/// u <- V diag(e^{-i λ t}) Vᵀ u, column by column.
void spectral_propagate(std::span<const double> vectors, std::span<const double> values, double t, ComplexMatrix &u);
}  // namespace serial

namespace parallel {
void matmul(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
void matvec(const ComplexMatrix &a, std::span<const Complex> x, std::span<Complex> y);
void kron(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
void spectral_apply(std::span<const double> vectors, std::span<const double> values, double t,
                    std::span<const Complex> x, std::span<Complex> y);
void spectral_propagate(std::span<const double> vectors, std::span<const double> values, double t, ComplexMatrix &u);
}  // namespace parallel

/// Work below this many complex multiply-adds stays on one thread.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

}  // namespace chainlab::kernels
