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

#include "chainlab/evolve.hpp"

#include <cmath>
#include <mutex>

#include "chainlab/errors.hpp"
#include "chainlab/kernels.hpp"

namespace chainlab {

ZeemanSchedule &ZeemanSchedule::then(double duration, std::vector<double> energies) {
    segments.push_back(Segment{duration, std::move(energies), std::nullopt, 16});
    return *this;
}

double ZeemanSchedule::total_duration() const {
    double t = 0.0;
    for (const auto &s : segments) t += s.duration;
    return t;
}

void ZeemanSchedule::validate(int n) const {
    for (const auto &s : segments) {
        if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
            throw Error(ErrorKind::InvalidChain, "segment durations must be positive");
        }
        if (s.energies.size() != static_cast<std::size_t>(n)) {
            throw Error(ErrorKind::LengthMismatch, "segment energy vector length differs from chain length");
        }
        if (s.ramp_to) {
            if (s.ramp_to->size() != static_cast<std::size_t>(n)) {
                throw Error(ErrorKind::LengthMismatch, "ramp target length differs from chain length");
            }
            if (s.ramp_steps < 1) throw Error(ErrorKind::InvalidChain, "ramp_steps must be positive");
        }
    }
}

std::shared_ptr<const SectorEigen> SegmentCache::get(const ChainSpec &chain, const SectorBasis &basis,
                                                     const std::vector<double> &energies, Coupling coupling) {
    Key key{static_cast<int>(coupling), chain.J, energies};
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto eig = std::make_shared<SectorEigen>();
    eig->blocks.resize(static_cast<std::size_t>(basis.sector_count()));
    for (int k = 0; k < basis.sector_count(); ++k) {
        const auto &states = basis.states(k);
        eig->blocks[static_cast<std::size_t>(k)] =
            symmetric_eig(sector_hamiltonian(chain, energies, coupling, states), states.size());
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(std::move(key), std::move(eig));
    return it->second;
}

std::size_t SegmentCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

ComplexMatrix BlockPropagator::to_dense(const SectorBasis &basis) const {
    const std::size_t dim = std::size_t{1} << basis.n();
    ComplexMatrix u(dim);
    for (int k = 0; k < basis.sector_count(); ++k) {
        const auto &states = basis.states(k);
        const auto &b = blocks[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t j = 0; j < states.size(); ++j) u(states[i], states[j]) = b(i, j);
        }
    }
    return u;
}

Evolver::Evolver(ChainSpec chain, Coupling coupling, std::shared_ptr<SegmentCache> cache)
    : chain_(std::move(chain)), coupling_(coupling), basis_(chain_.n), cache_(std::move(cache)) {
    chain_.validate();
}

std::vector<Evolver::Piece> Evolver::pieces(const ZeemanSchedule &schedule) const {
    schedule.validate(chain_.n);
    std::vector<Piece> out;
    for (const auto &seg : schedule.segments) {
        if (!seg.ramp_to) {
            out.push_back({seg.duration, cache_->get(chain_, basis_, seg.energies, coupling_)});
            continue;
        }
        const double dt = seg.duration / seg.ramp_steps;
        for (int s = 0; s < seg.ramp_steps; ++s) {
            const double f = (s + 0.5) / seg.ramp_steps;
            std::vector<double> e(seg.energies.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = (1.0 - f) * seg.energies[i] + f * (*seg.ramp_to)[i];
            out.push_back({dt, cache_->get(chain_, basis_, e, coupling_)});
        }
    }
    return out;
}

void Evolver::evolve_sector(const std::vector<Piece> &pieces, int sector, std::span<Complex> amplitudes,
                            bool parallel_kernel) const {
    ComplexVector scratch(amplitudes.size());
    for (const auto &p : pieces) {
        const auto &block = p.eig->blocks[static_cast<std::size_t>(sector)];
        if (parallel_kernel) {
            kernels::parallel::spectral_apply(block.eigenvectors, block.eigenvalues, p.duration, amplitudes, scratch);
        } else {
            kernels::serial::spectral_apply(block.eigenvectors, block.eigenvalues, p.duration, amplitudes, scratch);
        }
        std::copy(scratch.begin(), scratch.end(), amplitudes.begin());
    }
}

StateVector Evolver::evolve(const ZeemanSchedule &schedule, StateVector psi) const {
    if (psi.size() != chain_.dim()) throw Error(ErrorKind::DimensionMismatch, "state size differs from 2^n");
    const auto ps = pieces(schedule);
    for (int k = 0; k < basis_.sector_count(); ++k) {
        const auto &states = basis_.states(k);
        ComplexVector amp(states.size());
        bool any = false;
        for (std::size_t i = 0; i < states.size(); ++i) {
            amp[i] = psi[states[i]];
            any = any || amp[i] != Complex(0.0);
        }
        if (!any) continue;
        evolve_sector(ps, k, amp, true);
        for (std::size_t i = 0; i < states.size(); ++i) psi[states[i]] = amp[i];
    }
    return psi;
}

ComplexMatrix Evolver::evolve_columns(const ZeemanSchedule &schedule, std::span<const std::size_t> inputs) const {
    for (std::size_t idx : inputs) {
        if (idx >= chain_.dim()) throw Error(ErrorKind::DimensionMismatch, "basis input outside register");
    }
    const auto ps = pieces(schedule);
    ComplexMatrix out(chain_.dim(), inputs.size());
    const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const std::size_t idx = inputs[static_cast<std::size_t>(j)];
        const int k = basis_.sector_of(idx);
        const auto &states = basis_.states(k);
        ComplexVector amp(states.size(), 0.0);
        amp[basis_.position_of(idx)] = 1.0;
        evolve_sector(ps, k, amp, false);
        for (std::size_t i = 0; i < states.size(); ++i) out(states[i], static_cast<std::size_t>(j)) = amp[i];
    }
    return out;
}

BlockPropagator Evolver::block_propagator(const ZeemanSchedule &schedule) const {
    const auto ps = pieces(schedule);
    BlockPropagator prop;
    prop.blocks.resize(static_cast<std::size_t>(basis_.sector_count()));
    for (int k = 0; k < basis_.sector_count(); ++k) {
        const std::size_t m = basis_.states(k).size();
        ComplexMatrix u = ComplexMatrix::identity(m);
        for (const auto &p : ps) {
            const auto &block = p.eig->blocks[static_cast<std::size_t>(k)];
            kernels::parallel::spectral_propagate(block.eigenvectors, block.eigenvalues, p.duration, u);
        }
        prop.blocks[static_cast<std::size_t>(k)] = std::move(u);
    }
    return prop;
}

ComplexMatrix Evolver::propagator(const ZeemanSchedule &schedule) const {
    return block_propagator(schedule).to_dense(basis_);
}

ComplexMatrix propagator(const ChainSpec &chain, const ZeemanSchedule &schedule, Coupling coupling) {
    return Evolver(chain, coupling).propagator(schedule);
}

StateVector evolve(const ChainSpec &chain, const ZeemanSchedule &schedule, const StateVector &psi0, Coupling coupling) {
    return Evolver(chain, coupling).evolve(schedule, psi0);
}

ComplexVector frame_phases(int n, const std::vector<double> &energies, double t) {
    if (energies.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::LengthMismatch, "frame energies length differs from chain length");
    }
    const std::size_t dim = std::size_t{1} << n;
    ComplexVector out(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) e += energies[static_cast<std::size_t>(i)] * sigma_z(spin_at(idx, i, n));
        out[idx] = std::polar(1.0, e * t);
    }
    return out;
}

ComplexMatrix rotating_frame_strip(const ComplexMatrix &u, const ChainSpec &chain,
                                   const std::vector<double> &energies_passive, double t_total) {
    if (u.rows() != chain.dim()) throw Error(ErrorKind::DimensionMismatch, "operator rows differ from 2^n");
    const auto phases = frame_phases(chain.n, energies_passive, t_total);
    ComplexMatrix w = u;
    for (std::size_t r = 0; r < w.rows(); ++r) {
        for (auto &v : w.row(r)) v *= phases[r];
    }
    return w;
}

double total_sigma_z_expectation(std::span<const Complex> psi, int n) {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += sigma_z(spin_at(idx, i, n));
        acc += s * std::norm(psi[idx]);
    }
    return acc;
}

}  // namespace chainlab
