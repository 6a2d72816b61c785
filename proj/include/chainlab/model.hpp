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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainlab/linalg.hpp"

namespace chainlab {

// Spin basis convention, fixed project-wide:
//   logical |0> <-> |up> (sigma^Z = +1), logical |1> <-> |down>;
//   site 0 is the most significant bit of a basis index, a set bit is |down>.
enum class Spin : unsigned char { Up = 0, Down = 1 };

inline int sigma_z(Spin s) { return s == Spin::Up ? 1 : -1; }
inline Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

inline std::size_t site_mask(int site, int n) { return std::size_t{1} << (n - 1 - site); }
inline Spin spin_at(std::size_t index, int site, int n) {
    return (index & site_mask(site, n)) ? Spin::Down : Spin::Up;
}
std::size_t basis_index(const std::vector<Spin> &spins);
std::vector<Spin> basis_spins(std::size_t index, int n);

enum class Role : char { A = 'A', B = 'B', C = 'C' };
enum class Axis { X, Y, Z };
enum class Coupling { Heisenberg, EffectiveIsing };

struct ZeemanLevels {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;

    /// A = base, B = A + delta_ba*J, C = B + delta_cb*J (delta_cb defaults to delta_ba).
    static ZeemanLevels from_delta(double delta_ba, double J, double base = 0.0,
                                   std::optional<double> delta_cb = std::nullopt);
    double energy(Role r) const;
};

struct ChainSpec {
    int n = 0;
    double J = 1.0;
    std::vector<Role> roles;
    ZeemanLevels levels;

    /// Throws InvalidChain when n is outside [2, 12], J is not finite and positive,
    /// or roles do not match n.
    void validate() const;
    std::vector<double> passive_energies() const;
    std::string roles_string() const;
    std::size_t dim() const { return std::size_t{1} << n; }
};

ChainSpec make_chain(std::string_view roles, double J, const ZeemanLevels &levels);
std::vector<Role> parse_roles(std::string_view roles);

ComplexMatrix pauli(Axis axis);
/// I ⊗ … ⊗ σ ⊗ … ⊗ I on `site` of an n-spin register. Throws SiteOutOfRange.
ComplexMatrix pauli_site(Axis axis, int site, int n);
ComplexMatrix total_sigma_z(int n);

/// Σ E_i σ^Z_i + J Σ σ_i·σ_{i+1}. Throws LengthMismatch.
ComplexMatrix build_heisenberg(const ChainSpec &chain, const std::vector<double> &energies);
/// Σ E_i σ^Z_i + J Σ σ^Z_i σ^Z_{i+1}; diagonal.
ComplexMatrix build_effective_ising(const ChainSpec &chain, const std::vector<double> &energies);
ComplexMatrix build_hamiltonian(const ChainSpec &chain, const std::vector<double> &energies, Coupling coupling);

/// (A+J)(σ^z_2 + σ^z_4) + ε σ^z_3 + J(σ_2·σ_3 + σ_3·σ_4) on three sites.
ComplexMatrix reduced_three_spin(double A, double J, double eps);

/// Basis states grouped by number of down spins; every chain Hamiltonian here
/// is block diagonal in this decomposition.
class SectorBasis {
public:
    explicit SectorBasis(int n);

    int n() const { return n_; }
    int sector_count() const { return n_ + 1; }
    const std::vector<std::size_t> &states(int n_down) const { return states_[static_cast<std::size_t>(n_down)]; }
    int sector_of(std::size_t index) const { return sector_[index]; }
    std::size_t position_of(std::size_t index) const { return position_[index]; }

private:
    int n_;
    std::vector<std::vector<std::size_t>> states_;
    std::vector<int> sector_;
    std::vector<std::size_t> position_;
};

/// Real symmetric block of the chain Hamiltonian on one sector (row-major).
std::vector<double> sector_hamiltonian(const ChainSpec &chain, const std::vector<double> &energies,
                                       Coupling coupling, const std::vector<std::size_t> &states);

}  // namespace chainlab
