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

#include "chainlab/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "chainlab/errors.hpp"

namespace chainlab {

namespace {

void check_energies(const ChainSpec &chain, const std::vector<double> &energies) {
    chain.validate();
    if (energies.size() != static_cast<std::size_t>(chain.n)) {
        throw Error(ErrorKind::LengthMismatch, "energy vector length " + std::to_string(energies.size()) +
                                                   " does not match chain length " + std::to_string(chain.n));
    }
}

double diagonal_energy(std::size_t index, int n, double J, const std::vector<double> &energies) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += energies[static_cast<std::size_t>(i)] * sigma_z(spin_at(index, i, n));
    for (int i = 0; i + 1 < n; ++i) e += J * sigma_z(spin_at(index, i, n)) * sigma_z(spin_at(index, i + 1, n));
    return e;
}

// Antiparallel neighbours (i, i+1) are exchanged by σ^Xσ^X + σ^Yσ^Y with amplitude 2.
template <typename Visit>
void for_each_flip_flop(std::size_t index, int n, Visit &&visit) {
    for (int i = 0; i + 1 < n; ++i) {
        const std::size_t m = site_mask(i, n) | site_mask(i + 1, n);
        const std::size_t pair = index & m;
        if (pair != 0 && pair != m) visit(index ^ m);
    }
}

}  // namespace

std::size_t basis_index(const std::vector<Spin> &spins) {
    std::size_t idx = 0;
    for (Spin s : spins) idx = (idx << 1) | static_cast<std::size_t>(s);
    return idx;
}

std::vector<Spin> basis_spins(std::size_t index, int n) {
    std::vector<Spin> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = spin_at(index, i, n);
    return out;
}

ZeemanLevels ZeemanLevels::from_delta(double delta_ba, double J, double base, std::optional<double> delta_cb) {
    ZeemanLevels l;
    l.A = base;
    l.B = base + delta_ba * J;
    l.C = l.B + delta_cb.value_or(delta_ba) * J;
    return l;
}

double ZeemanLevels::energy(Role r) const {
    switch (r) {
        case Role::A: return A;
        case Role::B: return B;
        case Role::C: return C;
    }
    return 0.0;
}

void ChainSpec::validate() const {
    if (n < 2 || n > 12) throw Error(ErrorKind::InvalidChain, "chain length must be in [2, 12]");
    if (!std::isfinite(J) || J <= 0.0) throw Error(ErrorKind::InvalidChain, "J must be finite and positive");
    if (roles.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::InvalidChain, "roles length does not match n");
    }
}

std::vector<double> ChainSpec::passive_energies() const {
    std::vector<double> e;
    e.reserve(roles.size());
    for (Role r : roles) e.push_back(levels.energy(r));
    return e;
}

std::string ChainSpec::roles_string() const {
    std::string s;
    for (Role r : roles) s.push_back(static_cast<char>(r));
    return s;
}

std::vector<Role> parse_roles(std::string_view roles) {
    std::vector<Role> out;
    for (char c : roles) {
        if (c != 'A' && c != 'B' && c != 'C') {
            throw Error(ErrorKind::InvalidChain, std::string("unknown role '") + c + "'");
        }
        out.push_back(static_cast<Role>(c));
    }
    return out;
}

ChainSpec make_chain(std::string_view roles, double J, const ZeemanLevels &levels) {
    ChainSpec c;
    c.roles = parse_roles(roles);
    c.n = static_cast<int>(c.roles.size());
    c.J = J;
    c.levels = levels;
    c.validate();
    return c;
}

ComplexMatrix pauli(Axis axis) {
    using namespace std::complex_literals;
    switch (axis) {
        case Axis::X: return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case Axis::Y: return ComplexMatrix::from_rows({{0.0, -1i}, {1i, 0.0}});
        case Axis::Z: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    }
    return {};
}

ComplexMatrix pauli_site(Axis axis, int site, int n) {
    if (n < 1 || site < 0 || site >= n) {
        throw Error(ErrorKind::SiteOutOfRange, "site " + std::to_string(site) + " outside chain of " + std::to_string(n));
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const ComplexMatrix p = pauli(axis);
    for (int k = 0; k < n; ++k) out = kron(out, k == site ? p : id2);
    return out;
}

ComplexMatrix total_sigma_z(int n) {
    ComplexMatrix m(std::size_t{1} << n);
    for (std::size_t idx = 0; idx < m.rows(); ++idx) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += sigma_z(spin_at(idx, i, n));
        m(idx, idx) = s;
    }
    return m;
}

ComplexMatrix build_hamiltonian(const ChainSpec &chain, const std::vector<double> &energies, Coupling coupling) {
    check_energies(chain, energies);
    const int n = chain.n;
    ComplexMatrix h(chain.dim());
    for (std::size_t idx = 0; idx < h.rows(); ++idx) {
        h(idx, idx) = diagonal_energy(idx, n, chain.J, energies);
        if (coupling == Coupling::Heisenberg) {
            for_each_flip_flop(idx, n, [&](std::size_t other) { h(other, idx) += 2.0 * chain.J; });
        }
    }
    return h;
}

ComplexMatrix build_heisenberg(const ChainSpec &chain, const std::vector<double> &energies) {
    return build_hamiltonian(chain, energies, Coupling::Heisenberg);
}

ComplexMatrix build_effective_ising(const ChainSpec &chain, const std::vector<double> &energies) {
    return build_hamiltonian(chain, energies, Coupling::EffectiveIsing);
}

ComplexMatrix reduced_three_spin(double A, double J, double eps) {
    ChainSpec c;
    c.n = 3;
    c.J = J;
    c.roles = {Role::A, Role::B, Role::A};
    return build_heisenberg(c, {A + J, eps, A + J});
}

SectorBasis::SectorBasis(int n) : n_(n), states_(static_cast<std::size_t>(n) + 1) {
    const std::size_t dim = std::size_t{1} << n;
    sector_.resize(dim);
    position_.resize(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const int k = std::popcount(idx);
        auto &bucket = states_[static_cast<std::size_t>(k)];
        sector_[idx] = k;
        position_[idx] = bucket.size();
        bucket.push_back(idx);
    }
}

std::vector<double> sector_hamiltonian(const ChainSpec &chain, const std::vector<double> &energies,
                                       Coupling coupling, const std::vector<std::size_t> &states) {
    check_energies(chain, energies);
    const std::size_t m = states.size();
    std::unordered_map<std::size_t, std::size_t> pos;
    pos.reserve(m);
    for (std::size_t i = 0; i < m; ++i) pos.emplace(states[i], i);
    std::vector<double> h(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        h[i * m + i] = diagonal_energy(states[i], chain.n, chain.J, energies);
        if (coupling == Coupling::Heisenberg) {
            for_each_flip_flop(states[i], chain.n, [&](std::size_t other) { h[pos.at(other) * m + i] += 2.0 * chain.J; });
        }
    }
    return h;
}

}  // namespace chainlab
