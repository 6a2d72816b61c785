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

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chainlab/analysis.hpp"
#include "chainlab/evolve.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/model.hpp"
#include "chainlab/synthesis.hpp"
#include "chainlab/zeno.hpp"

namespace chainlab {

using Json = nlohmann::json;

// Serialization. Parsers throw ConfigInvalid on missing, mistyped or unknown keys.

Json to_json(const ChainSpec &chain);
ChainSpec chain_from_json(const Json &j);
Json to_json(const ZeemanSchedule &schedule);
ZeemanSchedule schedule_from_json(const Json &j);
/// Complex matrices as nested [re, im] pairs.
Json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);
Json to_json(const GateReport &report);
Json to_json(const SynthesisResult &result);
/// Summary only; per-trial traces go to CSV.
Json to_json(const ZenoStats &stats);

std::string coupling_name(Coupling c);
std::string jitter_model_name(JitterModel m);

/// One document with a section per command. Unknown keys are rejected.
struct RunConfig {
    double J = 1.0;
    double delta = 1000.0;
    std::optional<double> delta_cb;
    double base = 0.0;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = available parallelism
    Coupling coupling = Coupling::Heisenberg;

    struct VerifyG {
        double window_lo = 0.0;
        double window_hi = 4.0;
        int grid_points = 400;
        double threshold = 0.999;
        std::optional<double> t_gate;
        double tolerance = 1e-3;  // op_distance to Ĝ after z-phase fit
    } verify_g;

    struct VerifyM {
        double resonance_offset = 1.0;
        std::optional<double> t_gate;
        double expected_phase;  // defaults to -π/√5
        double max_off_diagonal = 1e-3;
        double tolerance = 1e-3;  // radians
    } verify_m;

    struct Sweep {
        std::vector<double> delta_values = {5, 10, 20, 50, 100, 300, 1000};
        double threshold = 0.5;
        TableFormat format = TableFormat::Csv;
        std::vector<double> ising_grid = {10, 20, 50, 100, 200, 500, 1000};
        double tolerance = 1e-6;  // slack on monotonicity
    } sweep;

    struct Synthesize {
        int starts = 64;
        int g_uses = 4;
        int m_uses = 2;
        int max_uses = 4;
        double tolerance = 1e-6;  // infidelity counted as success
    } synthesize;

    struct Zeno {
        int gates = 20;
        double jitter = 0.05;
        int trials = 10000;
        std::vector<int> collapse_every = {0, 4, 2, 1};
        JitterModel jitter_model = JitterModel::PerGate;
        double tolerance = 3.0;  // standard errors
    } zeno;

    struct SixSettings {
        double duration = 1.0;  // units of 1/J
        double tolerance = 1e-6;  // odd-qubit gate spread
    } six_settings;

    RunConfig();
    ZeemanLevels levels() const;
};

RunConfig parse_run_config(const Json &doc);
/// Throws ConfigInvalid (unreadable or malformed file included).
RunConfig load_run_config(const std::filesystem::path &path);

/// Writes `doc` pretty-printed. Throws IoFailure.
void write_json(const Json &doc, const std::filesystem::path &path);

}  // namespace chainlab
