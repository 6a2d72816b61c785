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

#include "chainlab/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/kernels.hpp"

namespace chainlab {

namespace {

using EigenRowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenRowMajor> as_eigen(const ComplexMatrix &m) {
    return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

ComplexMatrix from_eigen(const Eigen::Ref<const Eigen::MatrixXcd> &m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    }
    return out;
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, what);
    }
}

double phase_distance(const ComplexMatrix &u, const ComplexMatrix &v, double phi) {
    const Complex w = std::polar(1.0, phi);
    double worst = 0.0;
    const auto a = u.data();
    const auto b = v.data();
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - w * b[i]));
    return worst;
}

}  // namespace

std::size_t ComplexMatrix::dim() const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    return rows_;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto &row : rows) {
        if (row.size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
        std::size_t j = 0;
        for (const auto &v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
}

ComplexMatrix ComplexMatrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    ComplexMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    }
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "matrix sum shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "matrix difference shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows(), b.cols());
    kernels::parallel::matmul(a, b, out);
    return out;
}

ComplexVector operator*(const ComplexMatrix &a, std::span<const Complex> x) {
    ComplexVector y(a.rows());
    kernels::parallel::matvec(a, x, y);
    return y;
}

double max_abs(const ComplexMatrix &m) {
    double worst = 0.0;
    for (const auto &v : m.data()) worst = std::max(worst, std::abs(v));
    return worst;
}

double hermiticity_defect(const ComplexMatrix &h) {
    const std::size_t n = h.dim();
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
    }
    return worst;
}

EigenSystem hermitian_eig(const ComplexMatrix &h, const LinalgTolerances &tol) {
    const std::size_t n = h.dim();
    const double scale = max_abs(h);
    if (hermiticity_defect(h) > tol.hermiticity * scale) {
        throw Error(ErrorKind::NonHermitianInput, "symmetry defect exceeds tolerance");
    }
    EigenSystem out;
    out.eigenvalues.resize(n);
    const bool real = std::all_of(h.data().begin(), h.data().end(), [](const Complex &v) { return v.imag() == 0.0; });
    if (real) {
        RealRowMajor a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) a(r, c) = h(r, c).real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
        for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = solver.eigenvalues()(i);
        out.eigenvectors = from_eigen(solver.eigenvectors().cast<Complex>());
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(as_eigen(h));
        for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = solver.eigenvalues()(i);
        out.eigenvectors = from_eigen(solver.eigenvectors());
    }
    return out;
}

RealEigenSystem symmetric_eig(std::span<const double> a, std::size_t dim) {
    if (a.size() != dim * dim) throw Error(ErrorKind::DimensionMismatch, "symmetric_eig size");
    Eigen::Map<const RealRowMajor> m(a.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    RealEigenSystem out;
    out.dim = dim;
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    out.eigenvectors.resize(dim * dim);
    Eigen::Map<RealRowMajor>(out.eigenvectors.data(), static_cast<Eigen::Index>(dim),
                             static_cast<Eigen::Index>(dim)) = solver.eigenvectors();
    return out;
}

ComplexMatrix expm_i(const EigenSystem &eig, double t) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix scaled = eig.eigenvectors;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) *= std::polar(1.0, -eig.eigenvalues[c] * t);
    }
    return scaled * eig.eigenvectors.adjoint();
}

ComplexMatrix expm_i(const ComplexMatrix &h, double t, const LinalgTolerances &tol) {
    return expm_i(hermitian_eig(h, tol), t);
}

double unitarity_defect(const ComplexMatrix &u) {
    ComplexMatrix g = u.adjoint() * u;
    g -= ComplexMatrix::identity(g.dim());
    return max_abs(g);
}

double optimal_global_phase(const ComplexMatrix &u, const ComplexMatrix &v) {
    require_same_shape(u, v, "op_distance shapes differ");
    // The max-norm objective is not smooth; scan the circle, then refine the
    // best bracket by golden section.
    constexpr int kScan = 256;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double best_phi = 0.0;
    double best = phase_distance(u, v, 0.0);
    for (int k = 1; k < kScan; ++k) {
        const double phi = kTwoPi * k / kScan;
        const double d = phase_distance(u, v, phi);
        if (d < best) {
            best = d;
            best_phi = phi;
        }
    }
    const double step = kTwoPi / kScan;
    double lo = best_phi - step;
    double hi = best_phi + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = phase_distance(u, v, x1);
    double f2 = phase_distance(u, v, x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = phase_distance(u, v, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = phase_distance(u, v, x2);
        }
    }
    const double refined = 0.5 * (lo + hi);
    return phase_distance(u, v, refined) < best ? refined : best_phi;
}

double op_distance(const ComplexMatrix &u, const ComplexMatrix &v) {
    require_same_shape(u, v, "op_distance shapes differ");
    return phase_distance(u, v, optimal_global_phase(u, v));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out;
    kernels::parallel::kron(a, b, out);
    return out;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

ComplexMatrix polar_unitary(const ComplexMatrix &a) {
    Eigen::MatrixXcd m = as_eigen(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return from_eigen(svd.matrixU() * svd.matrixV().adjoint());
}

std::pair<ComplexMatrix, ComplexMatrix> nearest_kronecker(const ComplexMatrix &a, std::size_t dim_a) {
    const std::size_t n = a.dim();
    if (dim_a == 0 || n % dim_a != 0) throw Error(ErrorKind::DimensionMismatch, "kronecker factor size");
    const std::size_t db = n / dim_a;
    Eigen::MatrixXcd r(dim_a * dim_a, db * db);
    for (std::size_t i1 = 0; i1 < dim_a; ++i1) {
        for (std::size_t j1 = 0; j1 < dim_a; ++j1) {
            for (std::size_t i2 = 0; i2 < db; ++i2) {
                for (std::size_t j2 = 0; j2 < db; ++j2) {
                    r(i1 * dim_a + j1, i2 * db + j2) = a(i1 * db + i2, j1 * db + j2);
                }
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double s = std::sqrt(svd.singularValues()(0));
    ComplexMatrix fa(dim_a);
    ComplexMatrix fb(db);
    for (std::size_t i = 0; i < dim_a; ++i) {
        for (std::size_t j = 0; j < dim_a; ++j) fa(i, j) = s * svd.matrixU()(i * dim_a + j, 0);
    }
    for (std::size_t i = 0; i < db; ++i) {
        for (std::size_t j = 0; j < db; ++j) fb(i, j) = s * std::conj(svd.matrixV()(i * db + j, 0));
    }
    fa = polar_unitary(fa);
    fb = polar_unitary(fb);
    const Complex overlap = (kron(fa, fb).adjoint() * a).trace();
    if (std::abs(overlap) > 0.0) fa *= overlap / std::abs(overlap);
    return {fa, fb};
}

double vector_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "inner product sizes differ");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

}  // namespace chainlab
