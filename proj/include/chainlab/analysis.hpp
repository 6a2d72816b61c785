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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainlab/model.hpp"

namespace chainlab {

struct SweepSpec {
    std::vector<double> delta_values = {5, 10, 20, 50, 100, 300, 1000};
    double J = 1.0;
    double base = 0.0;
    double revival_threshold = 0.5;
    double window_hi = 4.0;  // units of 1/J
    Coupling coupling = Coupling::Heisenberg;

    /// Throws ConfigInvalid: at least two positive values in ascending order.
    void validate() const;
};

struct DefectRecord {
    double delta = 0.0;
    std::optional<double> t_r;  // empty when no revival was found
    double defect_worst = 0.0;
    double phase_noise_rad = 0.0;
    double leakage = 0.0;

    bool missing() const { return !t_r.has_value(); }
    /// sin²(phase_noise/2), on the same scale as defect_worst.
    double phase_noise_probability() const;
};

/// Architecture-1 register gate against I⊗Ĝ⊗I for every Δ, in grid order.
std::vector<DefectRecord> defect_sweep(const SweepSpec &spec);

struct ConvergenceRecord {
    double delta = 0.0;
    double leakage = 0.0;   // max over times in (0, 1/J] and basis states of 1 - |<k|U|k>|^2
    double distance = 0.0;  // op_distance at t = 1/J after frame and z-phase removal
};

struct ConvergenceStudy {
    std::vector<ConvergenceRecord> records;
    double leakage_slope = 0.0;   // least-squares log-log slope over Δ > 0
    double distance_slope = 0.0;
};

/// Full Heisenberg against effective Ising evolution on a passive chain with A = 0, B = Δ·J.
ConvergenceStudy ising_convergence(std::span<const double> delta_grid, double J = 1.0, std::string_view roles = "ABAB",
                                   int time_points = 400);

double loglog_slope(std::span<const double> x, std::span<const double> y);

enum class TableFormat { Csv, Json };

TableFormat parse_table_format(std::string_view name);
/// Columns delta, t_r, defect_worst, phase_noise_rad, leakage; 12 significant digits.
/// Missing rows leave the metric fields empty (CSV) or null (JSON). Throws IoFailure.
void emit_table(const std::vector<DefectRecord> &records, const std::filesystem::path &path, TableFormat format);
std::vector<DefectRecord> read_table(const std::filesystem::path &path, TableFormat format);

}  // namespace chainlab
