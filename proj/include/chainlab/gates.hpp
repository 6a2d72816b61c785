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

#include <functional>
#include <optional>
#include <vector>

#include "chainlab/evolve.hpp"
#include "chainlab/linalg.hpp"
#include "chainlab/model.hpp"

namespace chainlab {

struct SiteRef {
    int site = 0;
    Spin reference = Spin::Up;
};

/// Logical qubits on physical sites. A one-site qubit uses |0> = up, |1> = down;
/// a two-site qubit uses |0>_L = |down,up>, |1>_L = |up,down>. Logical basis
/// indices put qubit 0 in the most significant bit.
struct EncodingMap {
    int n = 0;
    std::vector<std::vector<int>> qubit_sites;
    std::vector<SiteRef> barriers;

    int qubit_count() const { return static_cast<int>(qubit_sites.size()); }
    std::size_t logical_dim() const { return std::size_t{1} << qubit_count(); }
    std::vector<Spin> qubit_pattern(int qubit, int bit) const;
    std::size_t physical_index(std::size_t logical) const;
    std::vector<std::size_t> basis_inputs() const;
    /// Disjoint sites inside the chain, one or two sites per qubit.
    void validate() const;
};

struct LocalInvariants {
    Complex g1;
    double g2 = 0.0;

    double distance(const LocalInvariants &other) const;
};

struct GateReport {
    ComplexMatrix logical_unitary;
    double leakage = 0.0;
    std::optional<double> revival_time;
    std::vector<double> residual_local_phases;  // pre then post z-angles, one per qubit each
    std::optional<LocalInvariants> invariants;
    std::optional<double> defect_worst;
    std::optional<double> target_distance;
};

namespace ideal {
/// Architecture-1 entangler with W = e^{iπ/3}/2.
ComplexMatrix g_gate();
ComplexMatrix controlled_phase(double phi);
/// diag(1, 1, 1, e^{-iπ/√5}).
ComplexMatrix m_gate();
double m_gate_phase();
ComplexMatrix cnot();
ComplexMatrix rz(double theta);
ComplexMatrix rx(double theta);
}  // namespace ideal

using ScheduleFamily = std::function<ZeemanSchedule(double)>;

struct RevivalOptions {
    int grid_points = 400;
    double threshold = 0.999;
    double tolerance = 1e-7;  // units of 1/J
};

struct Revival {
    double time = 0.0;
    double probability = 0.0;
};

/// min over logical basis inputs of the barrier's reference-state population.
double revival_probability(const Evolver &evolver, const ScheduleFamily &family, const EncodingMap &enc,
                           const SiteRef &barrier, double t);

/// First revival of `barrier` after it has left its reference state inside
/// [t_lo, t_hi]: the best grid point of the first excursion back above the
/// threshold, refined by golden section. Throws NoRevivalFound.
Revival find_revival(const Evolver &evolver, const ScheduleFamily &family, const EncodingMap &enc,
                     const SiteRef &barrier, double t_lo, double t_hi, const RevivalOptions &options = {});

struct ExtractOptions {
    double leakage_limit = 0.1;
    double polar_threshold = 1e-3;
};

/// Logical block of a propagator on the encoded subspace.
GateReport extract_gate(const ComplexMatrix &u_full, const EncodingMap &enc, const ExtractOptions &options = {});
/// Same, from the propagator columns of enc.basis_inputs() (in that order).
GateReport extract_gate_from_columns(const ComplexMatrix &columns, const EncodingMap &enc,
                                     const ExtractOptions &options = {});

/// Makhlin invariants of a two-qubit unitary. Throws NotUnitary.
LocalInvariants local_equivalence_invariants(const ComplexMatrix &u);

struct ZPhaseFit {
    ComplexMatrix aligned_target;  // D(post)·target·D(pre)·e^{iγ}
    std::vector<double> pre;
    std::vector<double> post;
    double global_phase = 0.0;
    double distance = 0.0;  // op_distance(actual, aligned_target)
};

/// Fits per-qubit z-rotations before and after `target` (and a global phase) to `actual`.
ZPhaseFit align_z_phases(const ComplexMatrix &actual, const ComplexMatrix &target, int qubits);
/// Diagonal of ⊗_q Rz(θ_q) on the logical basis.
ComplexVector z_phase_diagonal(const std::vector<double> &theta);

struct LocalCorrections {
    ComplexMatrix q1;
    ComplexMatrix q2;
    double phi = 0.0;  // in (-π, π]
    double off_diagonal_residual = 0.0;
};

/// Diagonal phase gates with (Q1⊗Q2)K = diag(1,1,1,e^{iφ}). Throws NotDiagonalizableLocally.
LocalCorrections derive_local_corrections(const ComplexMatrix &k, double max_off_diagonal = 1e-3);

/// Per-column comparison of a (possibly leaky) logical block against a target
/// dressed by the best-fitting z-phases.
struct TargetComparison {
    ZPhaseFit fit;
    std::vector<double> defects;       // 1 - |<target_j|actual_j>|^2 per basis input
    std::vector<double> phase_errors;  // arg <target_j|actual_j> per basis input, radians
    double defect_worst = 0.0;
    double phase_noise = 0.0;          // max |phase error|
};

TargetComparison compare_to_target(const ComplexMatrix &actual, const ComplexMatrix &target, int qubits);

/// Factor of `u` on the listed qubits (in that order) from the nearest Kronecker
/// product split of a `qubits`-qubit unitary; unitary, defined up to global phase.
ComplexMatrix subsystem_factor(const ComplexMatrix &u, const std::vector<int> &keep, int qubits);

/// Wraps an angle into (-π, π].
double wrap_phase(double phi);

}  // namespace chainlab
