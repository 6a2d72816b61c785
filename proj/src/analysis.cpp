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

#include "chainlab/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

#include "chainlab/errors.hpp"
#include "chainlab/evolve.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/schemes.hpp"

namespace chainlab {

void SweepSpec::validate() const {
    if (delta_values.size() < 2) throw Error(ErrorKind::ConfigInvalid, "sweep needs at least two Δ values");
    for (std::size_t i = 0; i < delta_values.size(); ++i) {
        if (!(delta_values[i] > 0.0) || !std::isfinite(delta_values[i])) {
            throw Error(ErrorKind::ConfigInvalid, "Δ values must be finite and positive");
        }
        if (i > 0 && !(delta_values[i] > delta_values[i - 1])) {
            throw Error(ErrorKind::ConfigInvalid, "Δ values must be strictly ascending");
        }
    }
    if (!(J > 0.0) || !std::isfinite(J)) throw Error(ErrorKind::ConfigInvalid, "J must be finite and positive");
    if (!(revival_threshold > 0.0 && revival_threshold < 1.0)) {
        throw Error(ErrorKind::ConfigInvalid, "revival threshold must lie in (0, 1)");
    }
    if (!(window_hi > 0.0)) throw Error(ErrorKind::ConfigInvalid, "revival window must be positive");
}

double DefectRecord::phase_noise_probability() const {
    const double s = std::sin(phase_noise_rad / 2.0);
    return s * s;
}

std::vector<DefectRecord> defect_sweep(const SweepSpec &spec) {
    spec.validate();
    const auto count = static_cast<std::ptrdiff_t>(spec.delta_values.size());
    std::vector<DefectRecord> out(spec.delta_values.size());
    const ComplexMatrix target = arch1_register_target();
    std::vector<std::exception_ptr> failures(out.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        DefectRecord &rec = out[static_cast<std::size_t>(k)];
        rec.delta = spec.delta_values[static_cast<std::size_t>(k)];
        const auto levels = ZeemanLevels::from_delta(rec.delta, spec.J, spec.base);
        const Scheme scheme = arch1_two_qubit_schedule(levels, spec.J, 0.0, Arch1Encoding::Register);
        PipelineOptions opts;
        opts.coupling = spec.coupling;
        opts.window_hi = spec.window_hi;
        opts.revival.threshold = spec.revival_threshold;
        opts.extract.leakage_limit = 1.0;
        try {
            ComplexMatrix raw;
            const GateReport report = run_scheme(scheme, opts, &raw);
            const auto cmp = compare_to_target(raw, target, 4);
            rec.t_r = report.revival_time;
            rec.leakage = report.leakage;
            rec.defect_worst = cmp.defect_worst;
            rec.phase_noise_rad = cmp.phase_noise;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NoRevivalFound) failures[static_cast<std::size_t>(k)] = std::current_exception();
        } catch (...) {
            failures[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto &f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorKind::LengthMismatch, "slope fit needs paired samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw Error(ErrorKind::LengthMismatch, "slope fit needs two positive samples");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConvergenceStudy ising_convergence(std::span<const double> delta_grid, double J, std::string_view roles,
                                   int time_points) {
    if (delta_grid.size() < 3) throw Error(ErrorKind::ConfigInvalid, "convergence study needs three Δ values");
    if (time_points < 1) throw Error(ErrorKind::ConfigInvalid, "time_points must be positive");
    ConvergenceStudy study;
    study.records.resize(delta_grid.size());
    const auto count = static_cast<std::ptrdiff_t>(delta_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const double delta = delta_grid[static_cast<std::size_t>(k)];
        const ChainSpec chain = make_chain(roles, J, ZeemanLevels::from_delta(delta, J));
        const auto energies = chain.passive_energies();
        const auto heis = hermitian_eig(build_heisenberg(chain, energies));
        const ComplexMatrix ising_h = build_effective_ising(chain, energies);
        ConvergenceRecord rec{delta, 0.0, 0.0};
        for (int s = 1; s <= time_points; ++s) {
            const ComplexMatrix u = expm_i(heis, s / (J * time_points));
            for (std::size_t i = 0; i < u.rows(); ++i) rec.leakage = std::max(rec.leakage, 1.0 - std::norm(u(i, i)));
        }
        const double t = 1.0 / J;
        const ComplexMatrix uh = rotating_frame_strip(expm_i(heis, t), chain, energies, t);
        ComplexMatrix ui(chain.dim());
        for (std::size_t i = 0; i < ui.rows(); ++i) ui(i, i) = std::polar(1.0, -ising_h(i, i).real() * t);
        ui = rotating_frame_strip(ui, chain, energies, t);
        rec.distance = align_z_phases(uh, ui, chain.n).distance;
        study.records[static_cast<std::size_t>(k)] = rec;
    }
    std::vector<double> d, leak, dist;
    for (const auto &r : study.records) {
        d.push_back(r.delta);
        leak.push_back(r.leakage);
        dist.push_back(r.distance);
    }
    study.leakage_slope = loglog_slope(d, leak);
    study.distance_slope = loglog_slope(d, dist);
    return study;
}

TableFormat parse_table_format(std::string_view name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    throw Error(ErrorKind::ConfigInvalid, "table format must be csv or json");
}

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

const char *const kColumns[] = {"delta", "t_r", "defect_worst", "phase_noise_rad", "leakage"};

}  // namespace

void emit_table(const std::vector<DefectRecord> &records, const std::filesystem::path &path, TableFormat format) {
    if (records.empty()) throw Error(ErrorKind::IoFailure, "no records to write");
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
    if (format == TableFormat::Csv) {
        out << "delta,t_r,defect_worst,phase_noise_rad,leakage\n";
        for (const auto &r : records) {
            out << fmt12(r.delta);
            if (r.missing()) {
                out << ",,,,\n";
            } else {
                out << ',' << fmt12(*r.t_r) << ',' << fmt12(r.defect_worst) << ',' << fmt12(r.phase_noise_rad) << ','
                    << fmt12(r.leakage) << '\n';
            }
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &r : records) {
            nlohmann::json row;
            row["delta"] = round12(r.delta);
            if (r.missing()) {
                for (const char *c : {"t_r", "defect_worst", "phase_noise_rad", "leakage"}) row[c] = nullptr;
            } else {
                row["t_r"] = round12(*r.t_r);
                row["defect_worst"] = round12(r.defect_worst);
                row["phase_noise_rad"] = round12(r.phase_noise_rad);
                row["leakage"] = round12(r.leakage);
            }
            rows.push_back(std::move(row));
        }
        out << rows.dump(2) << '\n';
    }
    if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

std::vector<DefectRecord> read_table(const std::filesystem::path &path, TableFormat format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
    std::vector<DefectRecord> out;
    if (format == TableFormat::Csv) {
        std::string line;
        std::getline(in, line);
        if (line != "delta,t_r,defect_worst,phase_noise_rad,leakage") {
            throw Error(ErrorKind::IoFailure, "unexpected table header in " + path.string());
        }
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) f.push_back(cell);
            f.resize(5);
            DefectRecord r;
            try {
                r.delta = std::stod(f[0]);
                if (!f[1].empty()) {
                    r.t_r = std::stod(f[1]);
                    r.defect_worst = std::stod(f[2]);
                    r.phase_noise_rad = std::stod(f[3]);
                    r.leakage = std::stod(f[4]);
                }
            } catch (const std::exception &) {
                throw Error(ErrorKind::IoFailure, "malformed row in " + path.string());
            }
            out.push_back(r);
        }
        return out;
    }
    try {
        const auto rows = nlohmann::json::parse(in);
        for (const auto &row : rows) {
            DefectRecord r;
            r.delta = row.at(kColumns[0]).get<double>();
            if (!row.at(kColumns[1]).is_null()) {
                r.t_r = row.at(kColumns[1]).get<double>();
                r.defect_worst = row.at(kColumns[2]).get<double>();
                r.phase_noise_rad = row.at(kColumns[3]).get<double>();
                r.leakage = row.at(kColumns[4]).get<double>();
            }
            out.push_back(r);
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::IoFailure, std::string("malformed table: ") + e.what());
    }
    return out;
}

}  // namespace chainlab
