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

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "chainlab/linalg.hpp"
#include "chainlab/model.hpp"

namespace chainlab {

using StateVector = ComplexVector;

struct Segment {
    double duration = 0.0;
    std::vector<double> energies;
    /// Optional linear ramp: energies move from `energies` to `ramp_to` over the
    /// segment, approximated by `ramp_steps` constant pieces at midpoint values.
    std::optional<std::vector<double>> ramp_to;
    int ramp_steps = 16;
};

/// Piecewise-constant Zeeman energies; later segments act later (on the left).
struct ZeemanSchedule {
    std::vector<Segment> segments;

    ZeemanSchedule &then(double duration, std::vector<double> energies);
    double total_duration() const;
    /// Throws LengthMismatch / InvalidChain on bad segments.
    void validate(int n) const;
};

/// Spectral factorization of a chain Hamiltonian, one block per down-spin count.
struct SectorEigen {
    std::vector<RealEigenSystem> blocks;
};

/// Eigendecompositions keyed by (coupling, J, energies). Safe for concurrent use.
class SegmentCache {
public:
    std::shared_ptr<const SectorEigen> get(const ChainSpec &chain, const SectorBasis &basis,
                                           const std::vector<double> &energies, Coupling coupling);
    std::size_t size() const;

private:
    struct Key {
        int coupling;
        double J;
        std::vector<double> energies;
        auto operator<=>(const Key &) const = default;
    };
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const SectorEigen>> entries_;
};

/// Block-diagonal propagator, one dense block per sector.
struct BlockPropagator {
    std::vector<ComplexMatrix> blocks;

    ComplexMatrix to_dense(const SectorBasis &basis) const;
};

/// Time evolution of one chain under Zeeman schedules.
class Evolver {
public:
    explicit Evolver(ChainSpec chain, Coupling coupling = Coupling::Heisenberg,
                     std::shared_ptr<SegmentCache> cache = std::make_shared<SegmentCache>());

    const ChainSpec &chain() const { return chain_; }
    const SectorBasis &basis() const { return basis_; }
    Coupling coupling() const { return coupling_; }

    StateVector evolve(const ZeemanSchedule &schedule, StateVector psi) const;
    /// Columns U|e_j⟩ for the listed basis inputs (2^n x inputs.size()).
    ComplexMatrix evolve_columns(const ZeemanSchedule &schedule, std::span<const std::size_t> inputs) const;
    BlockPropagator block_propagator(const ZeemanSchedule &schedule) const;
    ComplexMatrix propagator(const ZeemanSchedule &schedule) const;

private:
    struct Piece {
        double duration;
        std::shared_ptr<const SectorEigen> eig;
    };
    std::vector<Piece> pieces(const ZeemanSchedule &schedule) const;
    void evolve_sector(const std::vector<Piece> &pieces, int sector, std::span<Complex> amplitudes,
                       bool parallel_kernel) const;

    ChainSpec chain_;
    Coupling coupling_;
    SectorBasis basis_;
    std::shared_ptr<SegmentCache> cache_;
};

ComplexMatrix propagator(const ChainSpec &chain, const ZeemanSchedule &schedule,
                         Coupling coupling = Coupling::Heisenberg);
StateVector evolve(const ChainSpec &chain, const ZeemanSchedule &schedule, const StateVector &psi0,
                   Coupling coupling = Coupling::Heisenberg);

/// Diagonal of R†(t) with R(t) = exp(-i t Σ E_i σ^Z_i).
ComplexVector frame_phases(int n, const std::vector<double> &energies, double t);
/// R†(t_total)·U; U may be a full propagator or a block of columns.
ComplexMatrix rotating_frame_strip(const ComplexMatrix &u, const ChainSpec &chain,
                                   const std::vector<double> &energies_passive, double t_total);

/// ⟨ψ|Σσ^Z|ψ⟩.
double total_sigma_z_expectation(std::span<const Complex> psi, int n);

}  // namespace chainlab
