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

#include "chainlab/gates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "chainlab/errors.hpp"
#include "chainlab/optimize.hpp"

namespace chainlab {

using namespace std::complex_literals;

std::vector<Spin> EncodingMap::qubit_pattern(int qubit, int bit) const {
    const auto &sites = qubit_sites[static_cast<std::size_t>(qubit)];
    if (sites.size() == 1) return {bit ? Spin::Down : Spin::Up};
    return bit ? std::vector<Spin>{Spin::Up, Spin::Down} : std::vector<Spin>{Spin::Down, Spin::Up};
}

std::size_t EncodingMap::physical_index(std::size_t logical) const {
    std::vector<Spin> spins(static_cast<std::size_t>(n), Spin::Up);
    for (const auto &b : barriers) spins[static_cast<std::size_t>(b.site)] = b.reference;
    const int q = qubit_count();
    for (int k = 0; k < q; ++k) {
        const int bit = static_cast<int>((logical >> (q - 1 - k)) & 1u);
        const auto pattern = qubit_pattern(k, bit);
        const auto &sites = qubit_sites[static_cast<std::size_t>(k)];
        for (std::size_t s = 0; s < sites.size(); ++s) spins[static_cast<std::size_t>(sites[s])] = pattern[s];
    }
    return basis_index(spins);
}

std::vector<std::size_t> EncodingMap::basis_inputs() const {
    std::vector<std::size_t> out(logical_dim());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = physical_index(l);
    return out;
}

void EncodingMap::validate() const {
    std::set<int> used;
    auto claim = [&](int site) {
        if (site < 0 || site >= n) throw Error(ErrorKind::SiteOutOfRange, "encoding site outside chain");
        if (!used.insert(site).second) throw Error(ErrorKind::InvalidChain, "encoding sites overlap");
    };
    for (const auto &q : qubit_sites) {
        if (q.empty() || q.size() > 2) throw Error(ErrorKind::InvalidChain, "qubits use one or two sites");
        for (int s : q) claim(s);
    }
    for (const auto &b : barriers) claim(b.site);
}

double LocalInvariants::distance(const LocalInvariants &other) const {
    return std::max(std::abs(g1 - other.g1), std::abs(g2 - other.g2));
}

namespace ideal {

ComplexMatrix g_gate() {
    const Complex w = 0.5 * std::polar(1.0, std::numbers::pi / 3.0);
    const Complex x = 1i * std::sqrt(3.0) * w;
    return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0}, {0.0, w, x, 0.0}, {0.0, x, w, 0.0}, {0.0, 0.0, 0.0, 1.0}});
}

ComplexMatrix controlled_phase(double phi) {
    const Complex p = std::polar(1.0, phi);
    const Complex one = 1.0;
    return ComplexMatrix::diagonal(std::vector<Complex>{one, one, one, p});
}

double m_gate_phase() { return -std::numbers::pi / std::sqrt(5.0); }

ComplexMatrix m_gate() { return controlled_phase(m_gate_phase()); }

ComplexMatrix cnot() {
    return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}});
}

ComplexMatrix rz(double theta) {
    return ComplexMatrix::from_rows({{std::polar(1.0, -theta / 2), 0.0}, {0.0, std::polar(1.0, theta / 2)}});
}

ComplexMatrix rx(double theta) {
    const double c = std::cos(theta / 2);
    const Complex s = -1i * std::sin(theta / 2);
    return ComplexMatrix::from_rows({{c, s}, {s, c}});
}

}  // namespace ideal

double revival_probability(const Evolver &evolver, const ScheduleFamily &family, const EncodingMap &enc,
                           const SiteRef &barrier, double t) {
    const auto inputs = enc.basis_inputs();
    const ComplexMatrix cols = evolver.evolve_columns(family(t), inputs);
    const int n = evolver.chain().n;
    double worst = 1.0;
    for (std::size_t j = 0; j < cols.cols(); ++j) {
        double p = 0.0;
        for (std::size_t idx = 0; idx < cols.rows(); ++idx) {
            if (spin_at(idx, barrier.site, n) == barrier.reference) p += std::norm(cols(idx, j));
        }
        worst = std::min(worst, p);
    }
    return worst;
}

Revival find_revival(const Evolver &evolver, const ScheduleFamily &family, const EncodingMap &enc,
                     const SiteRef &barrier, double t_lo, double t_hi, const RevivalOptions &options) {
    if (!(t_hi > t_lo) || options.grid_points < 3) {
        throw Error(ErrorKind::NoRevivalFound, "empty revival window");
    }
    const int n_grid = options.grid_points;
    const double step = (t_hi - t_lo) / (n_grid - 1);
    std::vector<double> p(static_cast<std::size_t>(n_grid));
    for (int k = 0; k < n_grid; ++k) {
        p[static_cast<std::size_t>(k)] = revival_probability(evolver, family, enc, barrier, t_lo + k * step);
    }
    std::size_t k = 0;
    while (k < p.size() && p[k] >= options.threshold) ++k;
    if (k == p.size()) {
        throw Error(ErrorKind::NoRevivalFound, "barrier never left its reference state in the window");
    }
    const std::size_t departure = k;
    while (k < p.size() && p[k] < options.threshold) ++k;
    if (k == p.size()) {
        const double best = *std::max_element(p.begin() + static_cast<std::ptrdiff_t>(departure), p.end());
        throw Error(ErrorKind::NoRevivalFound,
                    "best revival probability " + std::to_string(best) + " after departure is below threshold");
    }
    std::size_t best = k;
    while (k < p.size() && p[k] >= options.threshold) {
        if (p[k] > p[best]) best = k;
        ++k;
    }
    const double centre = t_lo + static_cast<double>(best) * step;
    const double lo = std::max(t_lo, centre - step);
    const double hi = std::min(t_hi, centre + step);
    const double tol = options.tolerance / evolver.chain().J;
    auto objective = [&](double t) { return revival_probability(evolver, family, enc, barrier, t); };
    auto refined = optimize::golden_section_maximize(objective, lo, hi, tol);
    if (refined.value < p[best]) refined = {centre, p[best]};
    return {refined.x, refined.value};
}

GateReport extract_gate_from_columns(const ComplexMatrix &columns, const EncodingMap &enc, const ExtractOptions &options) {
    const auto inputs = enc.basis_inputs();
    if (columns.cols() != inputs.size()) throw Error(ErrorKind::DimensionMismatch, "one column per logical input");
    const std::size_t d = inputs.size();
    ComplexMatrix logical(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) logical(i, j) = columns(inputs[i], j);
    }
    GateReport report;
    for (std::size_t j = 0; j < d; ++j) {
        double kept = 0.0;
        for (std::size_t i = 0; i < d; ++i) kept += std::norm(logical(i, j));
        report.leakage = std::max(report.leakage, std::clamp(1.0 - kept, 0.0, 1.0));
    }
    if (report.leakage > options.leakage_limit) {
        throw Error(ErrorKind::ExcessiveLeakage, "leakage " + std::to_string(report.leakage) + " exceeds limit");
    }
    report.logical_unitary = report.leakage < options.polar_threshold ? polar_unitary(logical) : logical;
    return report;
}

GateReport extract_gate(const ComplexMatrix &u_full, const EncodingMap &enc, const ExtractOptions &options) {
    if (u_full.rows() != (std::size_t{1} << enc.n) || !u_full.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "propagator dimension does not match the encoded chain");
    }
    const auto inputs = enc.basis_inputs();
    std::vector<std::size_t> all(u_full.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return extract_gate_from_columns(u_full.select(all, inputs), enc, options);
}

LocalInvariants local_equivalence_invariants(const ComplexMatrix &u) {
    if (u.rows() != 4 || !u.is_square()) throw Error(ErrorKind::DimensionMismatch, "two-qubit gate expected");
    if (unitarity_defect(u) > 1e-6) throw Error(ErrorKind::NotUnitary, "invariants need a unitary");
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix q = ComplexMatrix::from_rows({{r, 0.0, 0.0, 1i * r},
                                                      {0.0, 1i * r, r, 0.0},
                                                      {0.0, 1i * r, -r, 0.0},
                                                      {r, 0.0, 0.0, -1i * r}});
    const ComplexMatrix ub = q.adjoint() * u * q;
    const ComplexMatrix m = ub.transpose() * ub;
    Eigen::Matrix4cd e;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) e(i, j) = u(i, j);
    }
    const Complex det = e.determinant();
    const Complex tr = m.trace();
    const Complex tr2 = (m * m).trace();
    return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

ComplexVector z_phase_diagonal(const std::vector<double> &theta) {
    const int q = static_cast<int>(theta.size());
    ComplexVector d(std::size_t{1} << q);
    for (std::size_t b = 0; b < d.size(); ++b) {
        double phase = 0.0;
        for (int k = 0; k < q; ++k) {
            const int bit = static_cast<int>((b >> (q - 1 - k)) & 1u);
            phase += bit ? theta[static_cast<std::size_t>(k)] / 2 : -theta[static_cast<std::size_t>(k)] / 2;
        }
        d[b] = std::polar(1.0, phase);
    }
    return d;
}

namespace {

ComplexMatrix dress(const ComplexMatrix &target, const ComplexVector &pre, const ComplexVector &post) {
    ComplexMatrix out = target;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= post[i] * pre[j];
    }
    return out;
}

}  // namespace

ZPhaseFit align_z_phases(const ComplexMatrix &actual, const ComplexMatrix &target, int qubits) {
    if (actual.rows() != target.rows() || actual.cols() != target.cols() || target.rows() != (std::size_t{1} << qubits)) {
        throw Error(ErrorKind::DimensionMismatch, "z-phase alignment needs equal logical dimensions");
    }
    const auto q = static_cast<std::size_t>(qubits);
    const double dim = static_cast<double>(target.rows());
    auto split = [q](std::span<const double> x) {
        return std::pair{std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(q)),
                         std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(q), x.end())};
    };
    auto objective = [&](std::span<const double> x) {
        auto [pre, post] = split(x);
        const ComplexMatrix t = dress(target, z_phase_diagonal(pre), z_phase_diagonal(post));
        return 1.0 - std::abs((t.adjoint() * actual).trace()) / dim;
    };
    std::mt19937_64 rng(0x5eedu);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    optimize::Optimum best{std::vector<double>(2 * q, 0.0), objective(std::vector<double>(2 * q, 0.0)), 1};
    for (int start = 0; start < 6; ++start) {
        std::vector<double> x0(2 * q, 0.0);
        if (start > 0) {
            for (auto &v : x0) v = angle(rng);
        }
        auto r = optimize::nelder_mead(objective, x0, {.max_evaluations = 6000, .initial_step = 0.4, .restarts = 3});
        if (r.value < best.value) best = std::move(r);
    }
    auto [pre, post] = split(best.x);
    ZPhaseFit fit;
    fit.aligned_target = dress(target, z_phase_diagonal(pre), z_phase_diagonal(post));
    const Complex overlap = (fit.aligned_target.adjoint() * actual).trace();
    fit.global_phase = std::arg(overlap);
    fit.aligned_target *= std::polar(1.0, fit.global_phase);
    fit.pre = std::move(pre);
    fit.post = std::move(post);
    for (auto *v : {&fit.pre, &fit.post}) {
        for (auto &a : *v) a = wrap_phase(a);
    }
    fit.distance = op_distance(actual, fit.aligned_target);
    return fit;
}

TargetComparison compare_to_target(const ComplexMatrix &actual, const ComplexMatrix &target, int qubits) {
    TargetComparison out;
    out.fit = align_z_phases(actual, target, qubits);
    const std::size_t d = target.rows();
    for (std::size_t j = 0; j < d; ++j) {
        Complex ov = 0.0;
        for (std::size_t i = 0; i < d; ++i) ov += std::conj(out.fit.aligned_target(i, j)) * actual(i, j);
        out.defects.push_back(std::clamp(1.0 - std::norm(ov), 0.0, 1.0));
        out.phase_errors.push_back(std::arg(ov));
        out.defect_worst = std::max(out.defect_worst, out.defects.back());
        out.phase_noise = std::max(out.phase_noise, std::abs(out.phase_errors.back()));
    }
    return out;
}

ComplexMatrix subsystem_factor(const ComplexMatrix &u, const std::vector<int> &keep, int qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    if (u.rows() != dim || !u.is_square()) throw Error(ErrorKind::DimensionMismatch, "operator size differs from 2^qubits");
    std::vector<int> order = keep;
    for (int q = 0; q < qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) order.push_back(q);
    }
    if (order.size() != static_cast<std::size_t>(qubits) || keep.empty()) {
        throw Error(ErrorKind::InvalidGrouping, "kept qubits must be distinct and inside the register");
    }
    // perm[new index] = old index, with order[k] becoming bit position k (MSB first)
    std::vector<std::size_t> perm(dim);
    for (std::size_t p = 0; p < dim; ++p) {
        std::size_t old = 0;
        for (int k = 0; k < qubits; ++k) {
            const std::size_t bit = (p >> (qubits - 1 - k)) & 1u;
            old |= bit << (qubits - 1 - order[static_cast<std::size_t>(k)]);
        }
        perm[p] = old;
    }
    for (int q : keep) {
        if (q < 0 || q >= qubits) throw Error(ErrorKind::InvalidGrouping, "kept qubit outside register");
    }
    const ComplexMatrix reordered = u.select(perm, perm);
    return nearest_kronecker(reordered, std::size_t{1} << keep.size()).first;
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    if (w > std::numbers::pi) w -= two_pi;
    return w;
}

LocalCorrections derive_local_corrections(const ComplexMatrix &k, double max_off_diagonal) {
    if (k.rows() != 4 || !k.is_square()) throw Error(ErrorKind::DimensionMismatch, "two-qubit gate expected");
    LocalCorrections out;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) out.off_diagonal_residual = std::max(out.off_diagonal_residual, std::abs(k(i, j)));
        }
    }
    if (out.off_diagonal_residual > max_off_diagonal) {
        throw Error(ErrorKind::NotDiagonalizableLocally,
                    "off-diagonal residual " + std::to_string(out.off_diagonal_residual));
    }
    const double a = std::arg(k(0, 0));
    const double b = std::arg(k(1, 1));
    const double c = std::arg(k(2, 2));
    const double d = std::arg(k(3, 3));
    const Complex one = 1.0;
    out.q1 = ComplexMatrix::diagonal(std::vector<Complex>{std::polar(1.0, -a), std::polar(1.0, -c)});
    out.q2 = ComplexMatrix::diagonal(std::vector<Complex>{one, std::polar(1.0, a - b)});
    out.phi = wrap_phase(d - c - b + a);
    return out;
}

}  // namespace chainlab
