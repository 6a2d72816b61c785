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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace chainlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix, row-major. Operators are square; rectangular
/// instances appear as blocks of propagator columns.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    /// Dimension of a square matrix. Throws DimensionMismatch otherwise.
    std::size_t dim() const;

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    ComplexVector column(std::size_t c) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    /// Sub-matrix with the given row and column index sets.
    ComplexMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexVector operator*(const ComplexMatrix &a, std::span<const Complex> x);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Default numerical tolerances; callers may pass their own.
struct LinalgTolerances {
    double hermiticity = 1e-12;     // relative to max |H_ij|
    double unitarity = 1e-10;
    double reconstruction = 1e-10;  // relative to max |H_ij|
};

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns
};

/// Real symmetric eigenproblem, used for Σσ^Z sectors of real chain Hamiltonians.
struct RealEigenSystem {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // row-major dim x dim, columns are eigenvectors
};

/// Largest entry magnitude (entrywise max norm).
double max_abs(const ComplexMatrix &m);
double hermiticity_defect(const ComplexMatrix &h);

EigenSystem hermitian_eig(const ComplexMatrix &h, const LinalgTolerances &tol = {});
RealEigenSystem symmetric_eig(std::span<const double> a, std::size_t dim);

/// e^{-iHt} from a precomputed spectral factorization.
ComplexMatrix expm_i(const EigenSystem &eig, double t);
/// e^{-iHt}. Throws NonHermitianInput.
ComplexMatrix expm_i(const ComplexMatrix &h, double t, const LinalgTolerances &tol = {});

/// ‖U†U − I‖ in the entrywise max norm.
double unitarity_defect(const ComplexMatrix &u);

/// min over φ of ‖U − e^{iφ}V‖ (entrywise max norm).
double op_distance(const ComplexMatrix &u, const ComplexMatrix &v);
/// Global phase φ that attains op_distance.
double optimal_global_phase(const ComplexMatrix &u, const ComplexMatrix &v);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// Nearest unitary in Frobenius norm (unitary factor of the polar decomposition).
ComplexMatrix polar_unitary(const ComplexMatrix &a);

/// Best approximation a ≈ A ⊗ B with A of size dim_a (Van Loan–Pitsianis).
/// Both factors are projected onto unitaries and the leftover phase is put in A.
std::pair<ComplexMatrix, ComplexMatrix> nearest_kronecker(const ComplexMatrix &a, std::size_t dim_a);

double vector_norm(std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace chainlab
