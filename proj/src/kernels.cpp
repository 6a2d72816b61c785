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

#include "chainlab/kernels.hpp"

#include <cmath>

#include "chainlab/errors.hpp"

namespace chainlab::kernels {

namespace {

void check_matmul(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "matmul inner dimensions differ");
    }
    if (out.rows() != a.rows() || out.cols() != b.cols()) {
        out = ComplexMatrix(a.rows(), b.cols());
    }
}

void check_matvec(const ComplexMatrix &a, std::span<const Complex> x, std::span<Complex> y) {
    if (a.cols() != x.size() || a.rows() != y.size()) {
        throw Error(ErrorKind::DimensionMismatch, "matvec dimensions differ");
    }
}

inline void matmul_row(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out, std::size_t i) {
    auto dst = out.row(i);
    for (auto &v : dst) v = 0.0;
    auto src = a.row(i);
    // spelled out on doubles: std::complex products carry NaN recovery that blocks vectorization
    double *d = reinterpret_cast<double *>(dst.data());
    const std::size_t n = dst.size();
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const double ar = src[k].real();
        const double ai = src[k].imag();
        if (ar == 0.0 && ai == 0.0) continue;
        const double *bk = reinterpret_cast<const double *>(b.row(k).data());
        for (std::size_t j = 0; j < n; ++j) {
            const double br = bk[2 * j];
            const double bi = bk[2 * j + 1];
            d[2 * j] += ar * br - ai * bi;
            d[2 * j + 1] += ar * bi + ai * br;
        }
    }
}

inline Complex dot_row(std::span<const Complex> row, std::span<const Complex> x) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        re += row[k].real() * x[k].real() - row[k].imag() * x[k].imag();
        im += row[k].real() * x[k].imag() + row[k].imag() * x[k].real();
    }
    return {re, im};
}

// dst += s * src over interleaved re/im doubles.
inline void axpy(double s, const Complex *src, Complex *dst, std::size_t n) {
    const double *x = reinterpret_cast<const double *>(src);
    double *y = reinterpret_cast<double *>(dst);
    for (std::size_t j = 0; j < 2 * n; ++j) y[j] += s * x[j];
}

void check_spectral(std::span<const double> vectors, std::span<const double> values, const ComplexMatrix &u) {
    const std::size_t n = values.size();
    if (vectors.size() != n * n || u.rows() != n) {
        throw Error(ErrorKind::DimensionMismatch, "spectral propagation dimensions differ");
    }
}

// w.row(k) = phase_k * sum_i V(i,k) u.row(i)
inline void rotate_in(std::span<const double> v, std::span<const double> values, double t, const ComplexMatrix &u,
                      ComplexMatrix &w, std::size_t k) {
    const std::size_t n = values.size();
    Complex *dst = w.row(k).data();
    for (std::size_t i = 0; i < n; ++i) axpy(v[i * n + k], u.row(i).data(), dst, u.cols());
    const Complex ph = std::polar(1.0, -values[k] * t);
    for (auto &z : w.row(k)) z = {ph.real() * z.real() - ph.imag() * z.imag(), ph.real() * z.imag() + ph.imag() * z.real()};
}

// u.row(i) = sum_k V(i,k) w.row(k)
inline void rotate_out(std::span<const double> v, const ComplexMatrix &w, ComplexMatrix &u, std::size_t i) {
    const std::size_t n = w.rows();
    Complex *dst = u.row(i).data();
    for (auto &z : u.row(i)) z = 0.0;
    for (std::size_t k = 0; k < n; ++k) axpy(v[i * n + k], w.row(k).data(), dst, w.cols());
}

inline void kron_row(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out, std::size_t r) {
    const std::size_t ra = r / b.rows();
    const std::size_t rb = r % b.rows();
    auto dst = out.row(r);
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
        const Complex s = a(ra, ca);
        for (std::size_t cb = 0; cb < b.cols(); ++cb) dst[ca * b.cols() + cb] = s * b(rb, cb);
    }
}

}  // namespace

namespace serial {

void matmul(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    check_matmul(a, b, out);
    for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, out, i);
}

void matvec(const ComplexMatrix &a, std::span<const Complex> x, std::span<Complex> y) {
    check_matvec(a, x, y);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot_row(a.row(i), x);
}

void kron(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    out = ComplexMatrix(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) kron_row(a, b, out, r);
}

void spectral_apply(std::span<const double> vectors, std::span<const double> values, double t,
                    std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t n = values.size();
    ComplexVector c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) c[k] += vectors[i * n + k] * x[i];
    }
    for (std::size_t k = 0; k < n; ++k) c[k] *= std::polar(1.0, -values[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += vectors[i * n + k] * c[k];
        y[i] = acc;
    }
}

void spectral_propagate(std::span<const double> vectors, std::span<const double> values, double t, ComplexMatrix &u) {
    check_spectral(vectors, values, u);
    ComplexMatrix w(u.rows(), u.cols());
    for (std::size_t k = 0; k < w.rows(); ++k) rotate_in(vectors, values, t, u, w, k);
    for (std::size_t i = 0; i < u.rows(); ++i) rotate_out(vectors, w, u, i);
}

}  // namespace serial

namespace parallel {

void matmul(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    check_matmul(a, b, out);
    const auto rows = static_cast<std::ptrdiff_t>(a.rows());
    const bool big = a.rows() * a.cols() * b.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < rows; ++i) matmul_row(a, b, out, static_cast<std::size_t>(i));
}

void matvec(const ComplexMatrix &a, std::span<const Complex> x, std::span<Complex> y) {
    check_matvec(a, x, y);
    const auto rows = static_cast<std::ptrdiff_t>(a.rows());
    const bool big = a.rows() * a.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < rows; ++i) y[i] = dot_row(a.row(static_cast<std::size_t>(i)), x);
}

void kron(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    out = ComplexMatrix(a.rows() * b.rows(), a.cols() * b.cols());
    const auto rows = static_cast<std::ptrdiff_t>(out.rows());
    const bool big = out.rows() * out.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t r = 0; r < rows; ++r) kron_row(a, b, out, static_cast<std::size_t>(r));
}

void spectral_apply(std::span<const double> vectors, std::span<const double> values, double t,
                    std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t n = values.size();
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const bool big = n * n >= kParallelThreshold;
    ComplexVector c(n);
    // Vᵀx: column k of V dotted with x.
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t k = 0; k < sn; ++k) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += vectors[i * n + static_cast<std::size_t>(k)] * x[i];
        c[static_cast<std::size_t>(k)] = acc * std::polar(1.0, -values[static_cast<std::size_t>(k)] * t);
    }
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        Complex acc = 0.0;
        const double *row = vectors.data() + static_cast<std::size_t>(i) * n;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * c[k];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

void spectral_propagate(std::span<const double> vectors, std::span<const double> values, double t, ComplexMatrix &u) {
    check_spectral(vectors, values, u);
    ComplexMatrix w(u.rows(), u.cols());
    const auto n = static_cast<std::ptrdiff_t>(u.rows());
    const bool big = u.rows() * u.rows() * u.cols() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t k = 0; k < n; ++k) rotate_in(vectors, values, t, u, w, static_cast<std::size_t>(k));
#pragma omp parallel for schedule(static) if (big)
    for (std::ptrdiff_t i = 0; i < n; ++i) rotate_out(vectors, w, u, static_cast<std::size_t>(i));
}

}  // namespace parallel

}  // namespace chainlab::kernels
