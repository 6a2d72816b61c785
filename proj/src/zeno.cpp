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

#include "chainlab/zeno.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "chainlab/errors.hpp"

namespace chainlab {

void ZenoConfig::validate() const {
    if (collapse_every < 0) throw Error(ErrorKind::ConfigInvalid, "collapse_every must be >= 0");
    if (!(jitter_stddev >= 0.0) || !std::isfinite(jitter_stddev)) {
        throw Error(ErrorKind::ConfigInvalid, "jitter_stddev must be finite and >= 0");
    }
    if (trials < 1) throw Error(ErrorKind::ConfigInvalid, "trials must be >= 1");
}

ZenoSetup arch1_zeno_setup(const ZeemanLevels &levels, double J, int gates, double t_gate) {
    if (gates < 1) throw Error(ErrorKind::ConfigInvalid, "at least one gate is required");
    ZenoSetup s;
    s.chain = make_chain("BABAB", J, levels);
    s.encoding = {5, {{1}, {3}}, {{0, Spin::Up}, {2, Spin::Down}, {4, Spin::Up}}};
    auto energies = s.chain.passive_energies();
    energies[2] = levels.A + J;
    const double t = t_gate > 0.0 ? t_gate : std::numbers::pi / (3.0 * J);
    s.sequence.assign(static_cast<std::size_t>(gates), Segment{t, energies, std::nullopt, 16});
    s.initial.assign(s.chain.dim(), 0.0);
    for (std::size_t l = 0; l < s.encoding.logical_dim(); ++l) s.initial[s.encoding.physical_index(l)] = 0.5;
    return s;
}

namespace {

struct Spectral {
    EigenSystem eig;

    void apply(double t, StateVector &psi, StateVector &scratch) const {
        const std::size_t d = psi.size();
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < d; ++r) acc += std::conj(eig.eigenvectors(r, c)) * psi[r];
            scratch[c] = acc * std::polar(1.0, -eig.eigenvalues[c] * t);
        }
        for (std::size_t r = 0; r < d; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) acc += eig.eigenvectors(r, c) * scratch[c];
            psi[r] = acc;
        }
    }
};

}  // namespace

ZenoStats zeno_run(const ZenoSetup &setup, const ZenoConfig &config) {
    config.validate();
    setup.chain.validate();
    setup.encoding.validate();
    if (setup.sequence.empty()) throw Error(ErrorKind::ConfigInvalid, "empty gate sequence");
    if (setup.initial.size() != setup.chain.dim()) throw Error(ErrorKind::DimensionMismatch, "initial state size");
    const int n = setup.chain.n;
    const std::size_t dim = setup.chain.dim();

    std::map<std::vector<double>, std::size_t> index;
    std::vector<Spectral> spectra;
    std::vector<std::size_t> gate_spectrum;
    for (const auto &seg : setup.sequence) {
        if (seg.energies.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::LengthMismatch, "gate energies");
        auto [it, fresh] = index.emplace(seg.energies, spectra.size());
        if (fresh) spectra.push_back({hermitian_eig(build_hamiltonian(setup.chain, seg.energies, setup.coupling))});
        gate_spectrum.push_back(it->second);
    }

    // Barrier outcome key per basis state; reference key for the expected pattern.
    std::size_t barrier_mask = 0;
    std::size_t reference_key = 0;
    for (const auto &b : setup.encoding.barriers) {
        barrier_mask |= site_mask(b.site, n);
        if (b.reference == Spin::Down) reference_key |= site_mask(b.site, n);
    }

    StateVector ideal = setup.initial;
    StateVector scratch(dim);
    for (std::size_t g = 0; g < setup.sequence.size(); ++g) {
        spectra[gate_spectrum[g]].apply(setup.sequence[g].duration, ideal, scratch);
    }

    ZenoStats stats;
    stats.config = config;
    stats.trials.resize(static_cast<std::size_t>(config.trials));
    const int gates = static_cast<int>(setup.sequence.size());
#pragma omp parallel for schedule(static)
    for (int trial = 0; trial < config.trials; ++trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(trial)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> jitter(0.0, config.jitter_stddev);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const double shared = config.jitter_model == JitterModel::PerTrial ? jitter(rng) : 0.0;

        StateVector psi = setup.initial;
        StateVector tmp(dim);
        bool wrong = false;
        auto collapse = [&] {
            std::map<std::size_t, double> weight;
            for (std::size_t i = 0; i < dim; ++i) weight[i & barrier_mask] += std::norm(psi[i]);
            const double u = uniform(rng);
            double acc = 0.0;
            std::size_t outcome = weight.rbegin()->first;
            for (const auto &[key, w] : weight) {
                acc += w;
                if (u < acc) {
                    outcome = key;
                    break;
                }
            }
            wrong = wrong || outcome != reference_key;
            const double norm = std::sqrt(weight[outcome]);
            for (std::size_t i = 0; i < dim; ++i) psi[i] = (i & barrier_mask) == outcome ? psi[i] / norm : Complex(0.0);
        };
        for (int g = 0; g < gates; ++g) {
            const double err = config.jitter_model == JitterModel::PerTrial ? shared : jitter(rng);
            const auto &seg = setup.sequence[static_cast<std::size_t>(g)];
            spectra[gate_spectrum[static_cast<std::size_t>(g)]].apply(seg.duration * (1.0 + err), psi, tmp);
            const bool last = g + 1 == gates;
            if (last || (config.collapse_every > 0 && (g + 1) % config.collapse_every == 0)) collapse();
        }
        stats.trials[static_cast<std::size_t>(trial)] = {trial, wrong, std::norm(inner(ideal, psi))};
    }

    double wrong_sum = 0.0;
    double f_sum = 0.0;
    double f_sq = 0.0;
    for (const auto &t : stats.trials) {
        wrong_sum += t.wrong_collapse ? 1.0 : 0.0;
        f_sum += t.fidelity;
        f_sq += t.fidelity * t.fidelity;
    }
    const double count = static_cast<double>(config.trials);
    stats.wrong_collapse_probability = wrong_sum / count;
    stats.wrong_collapse_stderr =
        std::sqrt(stats.wrong_collapse_probability * (1.0 - stats.wrong_collapse_probability) / count);
    stats.mean_fidelity = f_sum / count;
    const double var = count > 1 ? std::max(0.0, (f_sq - count * stats.mean_fidelity * stats.mean_fidelity) / (count - 1)) : 0.0;
    stats.fidelity_stderr = std::sqrt(var / count);
    return stats;
}

void write_zeno_csv(const ZenoStats &stats, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
    out << "trial,wrong_collapse,fidelity\n";
    char buf[64];
    for (const auto &t : stats.trials) {
        std::snprintf(buf, sizeof buf, "%.12g", t.fidelity);
        out << t.trial << ',' << (t.wrong_collapse ? 1 : 0) << ',' << buf << '\n';
    }
    if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

}  // namespace chainlab
