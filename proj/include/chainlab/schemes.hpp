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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainlab/evolve.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/model.hpp"

namespace chainlab {

/// A chain section, its encoding and a gate schedule acting on it.
struct Scheme {
    ChainSpec chain;
    EncodingMap encoding;
    ZeemanSchedule schedule;
    SiteRef barrier;                   // barrier whose revival times the gate
    std::vector<double> gate_energies;  // energies during the active segment
};

/// Active segment of duration t; empty for t <= 0.
ZeemanSchedule resonant_schedule(const std::vector<double> &energies, double t);
ScheduleFamily resonant_family(const Scheme &scheme);

// Architecture 1: nine spins BABABABAB, qubits W X Y Z on sites 1 3 5 7,
// barrier references ↓ ↑ ↓ ↑ ↓ on sites 0 2 4 6 8.

enum class Arch1Encoding { Pair, Register };

ChainSpec arch1_chain(const ZeemanLevels &levels, double J);
/// Qubits X, Y only; W and Z held in |0>.
EncodingMap arch1_pair_encoding();
/// All four qubits.
EncodingMap arch1_register_encoding();
/// Site 4 tuned to A+J for t_gate.
Scheme arch1_two_qubit_schedule(const ZeemanLevels &levels, double J, double t_gate,
                                Arch1Encoding encoding = Arch1Encoding::Pair);
/// I ⊗ Ĝ ⊗ I on the four-qubit register.
ComplexMatrix arch1_register_target();

// Architecture 2: ABCABC…, qubit q on sites (3q, 3q+1), barrier 3q+2 in ↑.

ChainSpec arch2_chain(const ZeemanLevels &levels, double J, int triples);
EncodingMap arch2_encoding(int triples);
/// Six spins; the second qubit's B-site is tuned to A+delta for t, the first qubit is held in |0>_L.
Scheme arch2_single_qubit_schedule(const ZeemanLevels &levels, double J, double delta, double t);
/// Rabi rate k of exp(i k t σx) at delta = 0, from the first full transfer |0>_L → |1>_L.
double measure_rabi_rate(const ZeemanLevels &levels, double J);
/// Six spins; qubit 0's B-site is tuned to C + resonance_offset·J for t_gate.
Scheme arch2_two_qubit_schedule(const ZeemanLevels &levels, double J, double t_gate, double resonance_offset = 1.0);
/// (π/√5)/J.
double arch2_revival_time(double J);

// Architecture 3: ABC triples with the tunable B-sites in alternating even/odd groups.

struct SixSetting {
    std::string label;
    double eps_even = 0.0;
    double eps_odd = 0.0;
    double duration = 0.0;
};

std::vector<SixSetting> six_settings(const ZeemanLevels &levels, double J, double duration = 0.0);
/// Throws InvalidGrouping unless the chain is ABC repeated at least twice.
ZeemanSchedule arch3_apply(const SixSetting &setting, const ChainSpec &chain);

struct IsolationReport {
    SixSetting setting;
    double leakage = 0.0;
    std::vector<ComplexMatrix> qubit_gates;  // nearest-Kronecker single-qubit factors
    double odd_spread = 0.0;                 // max op_distance between odd-qubit gates
    double even_spread = 0.0;
    std::vector<double> idle_distance;       // per qubit, distance to identity up to z-phases
};

/// Applies `setting` to a four-triple (12-spin) section and extracts every qubit's gate.
IsolationReport six_setting_isolation(const ZeemanLevels &levels, double J, const SixSetting &setting);

struct PairEntanglement {
    int even_qubit = 0;
    int odd_qubit = 1;
    ComplexMatrix gate;
    LocalInvariants invariants;
};

/// Two-qubit factors of a 12-spin run for the pairs (0,1) and (2,3).
std::vector<PairEntanglement> six_setting_pairs(const ZeemanLevels &levels, double J, const SixSetting &setting);

// Refocusing on two adjacent qubits.

struct RefocusPoint {
    double pulse_period = 0.0;
    int cycles = 0;
    double residual = 0.0;  // max deviation of the local invariants from the identity class
};

/// Alternates free evolution (tau) and an exact σx on site 1; one cycle is two such steps.
double refocus_residual(const ChainSpec &chain, double tau, int cycles, Coupling coupling = Coupling::EffectiveIsing);
/// Fixed total time, cycles = round(total / (2 tau)). Throws InvalidChain unless n = 2.
std::vector<RefocusPoint> refocus_demo(const ChainSpec &chain, std::span<const double> pulse_periods,
                                       double total_time, Coupling coupling = Coupling::EffectiveIsing);

/// All qubits in |0>_L, barriers in their references.
StateVector initialize_barriers(const ChainSpec &chain, const EncodingMap &enc);

// Gate pipelines.

struct PipelineOptions {
    Coupling coupling = Coupling::Heisenberg;
    std::optional<double> t_gate;  // skips the revival search
    double window_lo = 0.0;        // units of 1/J
    double window_hi = 4.0;
    RevivalOptions revival;
    ExtractOptions extract;
};

/// Logical block of `scheme` at the revival (or t_gate), frame stripped. The
/// report keeps the raw block when leakage exceeds the polar threshold.
GateReport run_scheme(const Scheme &scheme, const PipelineOptions &options, ComplexMatrix *raw_block = nullptr);

/// Architecture-1 gate against Ĝ: revival, z-phase fit, invariants, worst defect.
GateReport verify_g_pipeline(const ZeemanLevels &levels, double J, const PipelineOptions &options = {});

struct MPhaseReport {
    GateReport gate;
    double t_gate = 0.0;
    double revival_probability = 0.0;
    double phi = 0.0;
    double off_diagonal_residual = 0.0;
};

/// Architecture-2 gate at t_gate (default (π/√5)/J). Never throws on a large
/// off-diagonal residual; callers compare it.
MPhaseReport verify_m_pipeline(const ZeemanLevels &levels, double J, double resonance_offset,
                               const PipelineOptions &options = {});

}  // namespace chainlab
