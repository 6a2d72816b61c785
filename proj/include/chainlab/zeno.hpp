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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "chainlab/evolve.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/model.hpp"

namespace chainlab {

enum class JitterModel {
    PerGate,   // independent timing error for every gate
    PerTrial,  // one systematic error shared by all gates of a trial
};

struct ZenoConfig {
    int collapse_every = 0;  // gates between barrier collapses; 0 = only the final check
    double jitter_stddev = 0.05;  // relative to each gate's nominal duration
    int trials = 10000;
    std::uint64_t seed = 1;
    JitterModel jitter_model = JitterModel::PerGate;

    /// Throws ConfigInvalid.
    void validate() const;
};

struct ZenoTrial {
    int trial = 0;
    bool wrong_collapse = false;
    double fidelity = 0.0;
};

struct ZenoStats {
    ZenoConfig config;
    double wrong_collapse_probability = 0.0;
    double wrong_collapse_stderr = 0.0;
    double mean_fidelity = 0.0;
    double fidelity_stderr = 0.0;
    std::vector<ZenoTrial> trials;
};

/// A gate sequence on a chain section, with the barriers to collapse.
struct ZenoSetup {
    ChainSpec chain;
    Coupling coupling = Coupling::Heisenberg;
    std::vector<Segment> sequence;  // one segment per gate
    EncodingMap encoding;
    StateVector initial;
};

/// Five-spin architecture-1 section |↑,X,↓,Y,↑⟩ with X, Y in |+⟩, repeating the
/// resonant gate of duration t_gate (default π/(3J)).
ZenoSetup arch1_zeno_setup(const ZeemanLevels &levels, double J, int gates, double t_gate = 0.0);

/// Monte-Carlo over trials. Every collapse projects all barriers at once with
/// Born-rule sampling; a final collapse always follows the last gate. Fidelity is
/// against the jitter-free, collapse-free evolution. Deterministic in (seed, trials).
ZenoStats zeno_run(const ZenoSetup &setup, const ZenoConfig &config);

/// Columns: trial, wrong_collapse, fidelity. Throws IoFailure.
void write_zeno_csv(const ZenoStats &stats, const std::filesystem::path &path);

}  // namespace chainlab
