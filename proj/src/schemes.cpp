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

#include "chainlab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chainlab/errors.hpp"
#include "chainlab/optimize.hpp"

namespace chainlab {

ZeemanSchedule resonant_schedule(const std::vector<double> &energies, double t) {
    ZeemanSchedule s;
    if (t > 0.0) s.then(t, energies);
    return s;
}

ScheduleFamily resonant_family(const Scheme &scheme) {
    return [energies = scheme.gate_energies](double t) { return resonant_schedule(energies, t); };
}

namespace {

Scheme make_scheme(ChainSpec chain, EncodingMap enc, SiteRef barrier, std::vector<double> energies, double t) {
    enc.validate();
    Scheme s{std::move(chain), std::move(enc), {}, barrier, std::move(energies)};
    s.schedule = resonant_schedule(s.gate_energies, t);
    return s;
}

}  // namespace

ChainSpec arch1_chain(const ZeemanLevels &levels, double J) { return make_chain("BABABABAB", J, levels); }

EncodingMap arch1_pair_encoding() {
    return {9,
            {{3}, {5}},
            {{0, Spin::Down}, {1, Spin::Up}, {2, Spin::Up}, {4, Spin::Down}, {6, Spin::Up}, {7, Spin::Up}, {8, Spin::Down}}};
}

EncodingMap arch1_register_encoding() {
    return {9, {{1}, {3}, {5}, {7}}, {{0, Spin::Down}, {2, Spin::Up}, {4, Spin::Down}, {6, Spin::Up}, {8, Spin::Down}}};
}

Scheme arch1_two_qubit_schedule(const ZeemanLevels &levels, double J, double t_gate, Arch1Encoding encoding) {
    ChainSpec chain = arch1_chain(levels, J);
    auto energies = chain.passive_energies();
    energies[4] = levels.A + J;
    auto enc = encoding == Arch1Encoding::Pair ? arch1_pair_encoding() : arch1_register_encoding();
    return make_scheme(std::move(chain), std::move(enc), {4, Spin::Down}, std::move(energies), t_gate);
}

ComplexMatrix arch1_register_target() {
    const auto id = ComplexMatrix::identity(2);
    return kron(kron(id, ideal::g_gate()), id);
}

ChainSpec arch2_chain(const ZeemanLevels &levels, double J, int triples) {
    if (triples < 1) throw Error(ErrorKind::InvalidChain, "at least one qubit triple is required");
    std::string roles;
    for (int q = 0; q < triples; ++q) roles += "ABC";
    return make_chain(roles, J, levels);
}

EncodingMap arch2_encoding(int triples) {
    EncodingMap enc{3 * triples, {}, {}};
    for (int q = 0; q < triples; ++q) {
        enc.qubit_sites.push_back({3 * q, 3 * q + 1});
        enc.barriers.push_back({3 * q + 2, Spin::Up});
    }
    return enc;
}

Scheme arch2_single_qubit_schedule(const ZeemanLevels &levels, double J, double delta, double t) {
    ChainSpec chain = arch2_chain(levels, J, 2);
    auto energies = chain.passive_energies();
    energies[4] = levels.A + delta;
    EncodingMap enc{6, {{3, 4}}, {{0, Spin::Down}, {1, Spin::Up}, {2, Spin::Up}, {5, Spin::Up}}};
    return make_scheme(std::move(chain), std::move(enc), {5, Spin::Up}, std::move(energies), t);
}

double measure_rabi_rate(const ZeemanLevels &levels, double J) {
    const Scheme s = arch2_single_qubit_schedule(levels, J, 0.0, 0.0);
    const Evolver evolver(s.chain);
    const std::size_t in = s.encoding.physical_index(0);
    const std::size_t out = s.encoding.physical_index(1);
    auto transfer = [&](double t) {
        const std::size_t inputs[] = {in};
        return std::norm(evolver.evolve_columns(resonant_schedule(s.gate_energies, t), inputs)(out, 0));
    };
    const int grid = 200;
    const double hi = std::numbers::pi / J;
    const double step = hi / grid;
    double prev = 0.0;
    for (int k = 1; k <= grid; ++k) {
        const double p = transfer(k * step);
        const double next = transfer((k + 1) * step);
        if (p > 0.5 && p >= prev && p >= next) {
            const auto peak = optimize::golden_section_maximize(transfer, (k - 1) * step, (k + 1) * step, 1e-10 / J);
            return std::numbers::pi / (2.0 * peak.x);
        }
        prev = p;
    }
    throw Error(ErrorKind::NoRevivalFound, "no single-qubit transfer peak found");
}

Scheme arch2_two_qubit_schedule(const ZeemanLevels &levels, double J, double t_gate, double resonance_offset) {
    ChainSpec chain = arch2_chain(levels, J, 2);
    auto energies = chain.passive_energies();
    energies[1] = levels.C + resonance_offset * J;
    return make_scheme(std::move(chain), arch2_encoding(2), {2, Spin::Up}, std::move(energies), t_gate);
}

double arch2_revival_time(double J) { return std::numbers::pi / std::sqrt(5.0) / J; }

std::vector<SixSetting> six_settings(const ZeemanLevels &levels, double J, double duration) {
    const double a = levels.A;
    const double b = levels.B;
    const double c = levels.C;
    return {{"(B,A)", b, a, duration},     {"(B,A+J)", b, a + J, duration}, {"(B,C+J)", b, c + J, duration},
            {"(A,B)", a, b, duration},     {"(A+J,B)", a + J, b, duration}, {"(C+J,B)", c + J, b, duration}};
}

ZeemanSchedule arch3_apply(const SixSetting &setting, const ChainSpec &chain) {
    chain.validate();
    std::string expected;
    for (int q = 0; q < chain.n / 3; ++q) expected += "ABC";
    const bool pattern = chain.n % 3 == 0 && chain.n >= 6 && chain.roles_string() == expected;
    if (!pattern) throw Error(ErrorKind::InvalidGrouping, "even/odd grouping needs ABC repeated at least twice");
    auto energies = chain.passive_energies();
    for (int q = 0; q < chain.n / 3; ++q) {
        energies[static_cast<std::size_t>(3 * q + 1)] = q % 2 == 0 ? setting.eps_even : setting.eps_odd;
    }
    return resonant_schedule(energies, setting.duration);
}

namespace {

ComplexMatrix arch3_logical(const ZeemanLevels &levels, double J, const SixSetting &setting, double *leakage) {
    const ChainSpec chain = arch2_chain(levels, J, 4);
    const EncodingMap enc = arch2_encoding(4);
    const Evolver evolver(chain);
    const auto inputs = enc.basis_inputs();
    ComplexMatrix cols = evolver.evolve_columns(arch3_apply(setting, chain), inputs);
    cols = rotating_frame_strip(cols, chain, chain.passive_energies(), std::max(setting.duration, 0.0));
    auto report = extract_gate_from_columns(cols, enc, {.leakage_limit = 1.0, .polar_threshold = -1.0});
    if (leakage) *leakage = report.leakage;
    return polar_unitary(report.logical_unitary);
}

}  // namespace

IsolationReport six_setting_isolation(const ZeemanLevels &levels, double J, const SixSetting &setting) {
    IsolationReport r;
    r.setting = setting;
    const ComplexMatrix u = arch3_logical(levels, J, setting, &r.leakage);
    for (int q = 0; q < 4; ++q) {
        r.qubit_gates.push_back(subsystem_factor(u, {q}, 4));
        r.idle_distance.push_back(align_z_phases(r.qubit_gates.back(), ComplexMatrix::identity(2), 1).distance);
    }
    r.even_spread = op_distance(r.qubit_gates[0], r.qubit_gates[2]);
    r.odd_spread = op_distance(r.qubit_gates[1], r.qubit_gates[3]);
    return r;
}

std::vector<PairEntanglement> six_setting_pairs(const ZeemanLevels &levels, double J, const SixSetting &setting) {
    const ComplexMatrix u = arch3_logical(levels, J, setting, nullptr);
    std::vector<PairEntanglement> out;
    for (int first : {0, 2}) {
        PairEntanglement p;
        p.even_qubit = first;
        p.odd_qubit = first + 1;
        p.gate = subsystem_factor(u, {first, first + 1}, 4);
        p.invariants = local_equivalence_invariants(p.gate);
        out.push_back(std::move(p));
    }
    return out;
}

double refocus_residual(const ChainSpec &chain, double tau, int cycles, Coupling coupling) {
    chain.validate();
    if (chain.n != 2) throw Error(ErrorKind::InvalidChain, "refocusing acts on two adjacent qubits");
    const ComplexMatrix free = expm_i(build_hamiltonian(chain, chain.passive_energies(), coupling), tau);
    const ComplexMatrix x = pauli_site(Axis::X, 1, 2);
    const ComplexMatrix cycle = x * free * x * free;
    ComplexMatrix u = ComplexMatrix::identity(4);
    for (int c = 0; c < cycles; ++c) u = cycle * u;
    const auto inv = local_equivalence_invariants(u);
    return std::max(std::abs(inv.g1 - Complex(1.0)), std::abs(inv.g2 - 3.0));
}

std::vector<RefocusPoint> refocus_demo(const ChainSpec &chain, std::span<const double> pulse_periods,
                                       double total_time, Coupling coupling) {
    std::vector<RefocusPoint> out;
    for (double tau : pulse_periods) {
        if (!(tau > 0.0)) throw Error(ErrorKind::InvalidChain, "pulse periods must be positive");
        const int cycles = std::max(1, static_cast<int>(std::lround(total_time / (2.0 * tau))));
        out.push_back({tau, cycles, refocus_residual(chain, tau, cycles, coupling)});
    }
    return out;
}

StateVector initialize_barriers(const ChainSpec &chain, const EncodingMap &enc) {
    chain.validate();
    enc.validate();
    if (enc.n != chain.n) throw Error(ErrorKind::LengthMismatch, "encoding and chain lengths differ");
    StateVector psi(chain.dim(), 0.0);
    psi[enc.physical_index(0)] = 1.0;
    return psi;
}

GateReport run_scheme(const Scheme &scheme, const PipelineOptions &options, ComplexMatrix *raw_block) {
    const Evolver evolver(scheme.chain, options.coupling);
    const double J = scheme.chain.J;
    double t = 0.0;
    std::optional<double> revival;
    if (options.t_gate) {
        t = *options.t_gate;
    } else {
        const auto r = find_revival(evolver, resonant_family(scheme), scheme.encoding, scheme.barrier,
                                    options.window_lo / J, options.window_hi / J, options.revival);
        t = r.time;
        revival = t;
    }
    const auto inputs = scheme.encoding.basis_inputs();
    ComplexMatrix cols = evolver.evolve_columns(resonant_schedule(scheme.gate_energies, t), inputs);
    cols = rotating_frame_strip(cols, scheme.chain, scheme.chain.passive_energies(), t);
    GateReport report = extract_gate_from_columns(
        cols, scheme.encoding, {.leakage_limit = options.extract.leakage_limit, .polar_threshold = -1.0});
    if (raw_block) *raw_block = report.logical_unitary;
    if (report.leakage < options.extract.polar_threshold) report.logical_unitary = polar_unitary(report.logical_unitary);
    report.revival_time = revival;
    return report;
}

GateReport verify_g_pipeline(const ZeemanLevels &levels, double J, const PipelineOptions &options) {
    const Scheme scheme = arch1_two_qubit_schedule(levels, J, 0.0, Arch1Encoding::Pair);
    ComplexMatrix raw;
    GateReport report = run_scheme(scheme, options, &raw);
    const ComplexMatrix target = ideal::g_gate();
    const auto raw_cmp = compare_to_target(raw, target, 2);
    report.defect_worst = raw_cmp.defect_worst;
    const auto fit = align_z_phases(report.logical_unitary, target, 2);
    report.target_distance = fit.distance;
    report.residual_local_phases = fit.pre;
    report.residual_local_phases.insert(report.residual_local_phases.end(), fit.post.begin(), fit.post.end());
    if (unitarity_defect(report.logical_unitary) < 1e-6) {
        report.invariants = local_equivalence_invariants(report.logical_unitary);
    }
    return report;
}

MPhaseReport verify_m_pipeline(const ZeemanLevels &levels, double J, double resonance_offset,
                               const PipelineOptions &options) {
    const Scheme scheme = arch2_two_qubit_schedule(levels, J, 0.0, resonance_offset);
    MPhaseReport out;
    out.t_gate = options.t_gate.value_or(arch2_revival_time(J));
    const Evolver evolver(scheme.chain, options.coupling);
    out.revival_probability =
        revival_probability(evolver, resonant_family(scheme), scheme.encoding, scheme.barrier, out.t_gate);
    PipelineOptions fixed = options;
    fixed.t_gate = out.t_gate;
    out.gate = run_scheme(scheme, fixed);
    const auto corr = derive_local_corrections(out.gate.logical_unitary, std::numeric_limits<double>::infinity());
    out.phi = corr.phi;
    out.off_diagonal_residual = corr.off_diagonal_residual;
    out.gate.residual_local_phases = {std::arg(out.gate.logical_unitary(0, 0)), std::arg(out.gate.logical_unitary(1, 1)),
                                      std::arg(out.gate.logical_unitary(2, 2)), std::arg(out.gate.logical_unitary(3, 3))};
    if (unitarity_defect(out.gate.logical_unitary) < 1e-6) {
        out.gate.invariants = local_equivalence_invariants(out.gate.logical_unitary);
    }
    return out;
}

}  // namespace chainlab
