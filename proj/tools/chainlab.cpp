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

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "chainlab/analysis.hpp"
#include "chainlab/config.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/gates.hpp"
#include "chainlab/schemes.hpp"
#include "chainlab/synthesis.hpp"
#include "chainlab/zeno.hpp"

namespace fs = std::filesystem;
using namespace chainlab;

namespace {

enum Exit { kSuccess = 0, kTolerance = 1, kConfig = 2, kInternal = 3 };

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> tolerance;
};

struct Outcome {
    Json report;
    std::vector<std::string> failures;
};

void status_line(const std::string &command, int code, const std::string &reason, const std::string &detail) {
    Json line{{"command", command}, {"exit_code", code}, {"status", code == kSuccess ? "pass" : "fail"}};
    if (!reason.empty()) line["reason"] = reason;
    if (!detail.empty()) line["detail"] = detail;
    std::cout << line.dump() << std::endl;
}

Json base_report(const std::string &command, const RunConfig &cfg) {
    const auto lv = cfg.levels();
    return {{"command", command},
            {"J", cfg.J},
            {"delta", cfg.delta},
            {"levels", {{"A", lv.A}, {"B", lv.B}, {"C", lv.C}}},
            {"coupling", coupling_name(cfg.coupling)},
            {"seed", cfg.seed}};
}

PipelineOptions g_options(const RunConfig &cfg) {
    PipelineOptions o;
    o.coupling = cfg.coupling;
    o.t_gate = cfg.verify_g.t_gate;
    o.window_lo = cfg.verify_g.window_lo;
    o.window_hi = cfg.verify_g.window_hi;
    o.revival.grid_points = cfg.verify_g.grid_points;
    o.revival.threshold = cfg.verify_g.threshold;
    o.extract.leakage_limit = 1.0;
    return o;
}

Outcome verify_g(const RunConfig &cfg) {
    Outcome out{base_report("verify-g", cfg), {}};
    const auto lv = cfg.levels();
    const Scheme scheme = arch1_two_qubit_schedule(lv, cfg.J, 0.0, Arch1Encoding::Pair);
    out.report["chain"] = to_json(scheme.chain);
    out.report["tolerance"] = cfg.verify_g.tolerance;
    try {
        const GateReport r = verify_g_pipeline(lv, cfg.J, g_options(cfg));
        out.report["gate"] = to_json(r);
        const double t = r.revival_time.value_or(cfg.verify_g.t_gate.value_or(0.0));
        out.report["schedule"] = to_json(resonant_schedule(scheme.gate_energies, t));
        out.report["revival_ratio_to_hbar_over_6J"] = t * 6.0 * cfg.J;
        out.report["target_invariants"] = {{"g1", {local_equivalence_invariants(ideal::g_gate()).g1.real(),
                                                   local_equivalence_invariants(ideal::g_gate()).g1.imag()}},
                                           {"g2", local_equivalence_invariants(ideal::g_gate()).g2}};
        if (r.leakage > 0.1) out.failures.push_back("leakage " + std::to_string(r.leakage) + " above 0.1");
        if (!(*r.target_distance < cfg.verify_g.tolerance)) {
            out.failures.push_back("op_distance to G " + std::to_string(*r.target_distance) + " above tolerance");
        }
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NoRevivalFound) throw;
        out.failures.push_back(e.what());
    }
    return out;
}

Outcome verify_m(const RunConfig &cfg) {
    Outcome out{base_report("verify-m", cfg), {}};
    const auto lv = cfg.levels();
    const auto &v = cfg.verify_m;
    PipelineOptions o;
    o.coupling = cfg.coupling;
    o.t_gate = v.t_gate;
    o.extract.leakage_limit = 1.0;
    const MPhaseReport m = verify_m_pipeline(lv, cfg.J, v.resonance_offset, o);
    const Scheme scheme = arch2_two_qubit_schedule(lv, cfg.J, m.t_gate, v.resonance_offset);
    out.report["chain"] = to_json(scheme.chain);
    out.report["schedule"] = to_json(scheme.schedule);
    out.report["resonance_offset"] = v.resonance_offset;
    out.report["t_gate"] = m.t_gate;
    out.report["revival_probability"] = m.revival_probability;
    out.report["gate"] = to_json(m.gate);
    out.report["phi"] = m.phi;
    out.report["expected_phase"] = v.expected_phase;
    const double err = std::abs(wrap_phase(m.phi - v.expected_phase));
    out.report["phase_error"] = err;
    out.report["off_diagonal_residual"] = m.off_diagonal_residual;
    out.report["tolerance"] = v.tolerance;
    if (m.gate.leakage > 0.1) out.failures.push_back("leakage " + std::to_string(m.gate.leakage) + " above 0.1");
    if (m.revival_probability < 1.0 - 1e-4) {
        out.failures.push_back("barrier revival probability " + std::to_string(m.revival_probability));
    }
    if (!(err < v.tolerance)) out.failures.push_back("phase error " + std::to_string(err) + " rad above tolerance");
    if (!(m.off_diagonal_residual < v.max_off_diagonal)) {
        out.failures.push_back("off-diagonal residual " + std::to_string(m.off_diagonal_residual) + " above limit");
    }
    return out;
}

Outcome sweep(const RunConfig &cfg, const fs::path &dir) {
    Outcome out{base_report("sweep", cfg), {}};
    const auto &s = cfg.sweep;
    SweepSpec spec{s.delta_values, cfg.J, cfg.base, s.threshold, 4.0, cfg.coupling};
    const auto records = defect_sweep(spec);
    const fs::path table = dir / (s.format == TableFormat::Csv ? "defects.csv" : "defects.json");
    emit_table(records, table, s.format);
    out.report["table"] = table.filename().string();
    std::optional<double> prev;
    std::optional<double> at10, at100;
    for (const auto &r : records) {
        if (r.missing()) {
            out.failures.push_back("no revival at delta " + std::to_string(r.delta));
            continue;
        }
        if (prev && r.defect_worst > *prev + s.tolerance) {
            out.failures.push_back("defect increases at delta " + std::to_string(r.delta));
        }
        prev = r.defect_worst;
        if (r.phase_noise_probability() > r.defect_worst) {
            out.failures.push_back("phase noise above defect at delta " + std::to_string(r.delta));
        }
        if (r.delta == 10.0) at10 = r.defect_worst;
        if (r.delta == 100.0) at100 = r.defect_worst;
    }
    if (at10 && at100) {
        out.report["defect_ratio_10_over_100"] = *at10 / *at100;
        if (!(*at100 < *at10 / 10.0)) out.failures.push_back("defect(100) not below defect(10)/10");
    }
    const auto study = ising_convergence(s.ising_grid, cfg.J);
    Json conv = Json::array();
    for (const auto &r : study.records) conv.push_back({{"delta", r.delta}, {"leakage", r.leakage}, {"distance", r.distance}});
    out.report["ising_convergence"] = {
        {"records", conv}, {"leakage_slope", study.leakage_slope}, {"distance_slope", study.distance_slope}};
    if (std::abs(study.leakage_slope + 2.0) > 0.3) out.failures.push_back("Ising leakage slope off -2");
    return out;
}

Outcome synthesize(const RunConfig &cfg) {
    Outcome out{base_report("synthesize", cfg), {}};
    const auto &s = cfg.synthesize;
    SynthesisOptions opts;
    opts.starts = s.starts;
    opts.seed = cfg.seed;
    opts.success_infidelity = s.tolerance;
    const auto g = best_cnot_synthesis(ideal::g_gate(), s.g_uses, opts);
    out.report["g_gate"] = to_json(g);
    if (!g.success) out.failures.push_back("G with " + std::to_string(s.g_uses) + " uses did not reach CNOT");
    const auto m = best_cnot_synthesis(ideal::m_gate(), s.m_uses, opts);
    out.report["m_gate"] = to_json(m);
    if (!m.success) {
        Json scan = Json::array();
        std::optional<int> minimal;
        for (int k = 1; k <= s.max_uses; ++k) {
            const auto r = k == s.m_uses ? m : best_cnot_synthesis(ideal::m_gate(), k, opts);
            scan.push_back({{"n_uses", k}, {"fidelity", r.fidelity}, {"success", r.success}});
            if (r.success && !minimal) minimal = k;
        }
        out.report["m_gate_use_scan"] = scan;
        out.report["m_gate_minimal_uses"] = minimal ? Json(*minimal) : Json(nullptr);
        if (!minimal) out.failures.push_back("M reaches CNOT with no use count up to " + std::to_string(s.max_uses));
    }
    return out;
}

Outcome zeno(const RunConfig &cfg, const fs::path &dir) {
    Outcome out{base_report("zeno", cfg), {}};
    const auto &z = cfg.zeno;
    const ZenoSetup setup = arch1_zeno_setup(cfg.levels(), cfg.J, z.gates);
    out.report["chain"] = to_json(setup.chain);
    out.report["gates"] = z.gates;
    // never first, then increasing collapse frequency
    auto order = z.collapse_every;
    std::sort(order.begin(), order.end(), [](int a, int b) {
        if (a == 0 || b == 0) return a == 0 && b != 0;
        return a > b;
    });
    order.erase(std::unique(order.begin(), order.end()), order.end());
    std::vector<ZenoStats> stats;
    Json runs = Json::array();
    for (int every : order) {
        ZenoConfig zc{every, z.jitter, z.trials, cfg.seed, z.jitter_model};
        stats.push_back(zeno_run(setup, zc));
        write_zeno_csv(stats.back(), dir / ("zeno_every_" + std::to_string(every) + ".csv"));
        runs.push_back(to_json(stats.back()));
    }
    out.report["runs"] = runs;
    out.report["tolerance_sigma"] = z.tolerance;
    const auto &least = stats.front();
    const auto &most = stats.back();
    const double sigma = std::hypot(least.fidelity_stderr, most.fidelity_stderr);
    if (!(most.mean_fidelity - least.mean_fidelity > z.tolerance * sigma)) {
        out.failures.push_back("most frequent collapse does not raise fidelity beyond " + std::to_string(z.tolerance) +
                               " sigma");
    }
    for (std::size_t i = 1; i < stats.size(); ++i) {
        const double s = std::hypot(stats[i].wrong_collapse_stderr, stats[i - 1].wrong_collapse_stderr);
        if (stats[i].wrong_collapse_probability - stats[i - 1].wrong_collapse_probability > z.tolerance * s) {
            out.failures.push_back("wrong-collapse probability rises at collapse_every " +
                                   std::to_string(stats[i].config.collapse_every));
        }
    }
    return out;
}

Outcome six(const RunConfig &cfg) {
    Outcome out{base_report("six-settings", cfg), {}};
    const auto lv = cfg.levels();
    const double duration = cfg.six_settings.duration / cfg.J;
    const auto settings = six_settings(lv, cfg.J, duration);
    Json list = Json::array();
    for (const auto &s : settings) list.push_back({{"label", s.label}, {"eps_even", s.eps_even}, {"eps_odd", s.eps_odd}});
    out.report["settings"] = list;
    const auto iso = six_setting_isolation(lv, cfg.J, settings[1]);
    const double idle_bound = 10.0 / cfg.delta;
    Json gates = Json::array();
    for (const auto &g : iso.qubit_gates) gates.push_back(to_json(g));
    out.report["isolation"] = {{"setting", iso.setting.label},
                               {"duration", duration},
                               {"leakage", iso.leakage},
                               {"qubit_gates", gates},
                               {"odd_spread", iso.odd_spread},
                               {"idle_distance", iso.idle_distance},
                               {"idle_bound", idle_bound},
                               {"tolerance", cfg.six_settings.tolerance}};
    if (!(iso.odd_spread < cfg.six_settings.tolerance)) out.failures.push_back("odd-qubit gates differ");
    for (int q : {0, 2}) {
        if (!(iso.idle_distance[static_cast<std::size_t>(q)] < idle_bound)) {
            out.failures.push_back("even qubit " + std::to_string(q) + " not idle up to z-phases");
        }
    }
    Json pairs = Json::array();
    for (std::size_t k : {2u, 5u}) {
        for (const auto &p : six_setting_pairs(lv, cfg.J, {settings[k].label, settings[k].eps_even, settings[k].eps_odd,
                                                           arch2_revival_time(cfg.J)})) {
            pairs.push_back({{"setting", settings[k].label},
                             {"qubits", {p.even_qubit, p.odd_qubit}},
                             {"g1", {p.invariants.g1.real(), p.invariants.g1.imag()}},
                             {"g2", p.invariants.g2}});
        }
    }
    out.report["entangling_pairs"] = pairs;
    return out;
}

int run(const std::string &command, const Flags &flags) {
    RunConfig cfg;
    try {
        cfg = load_run_config(flags.config);
        if (flags.seed) cfg.seed = *flags.seed;
        if (flags.threads) {
            if (*flags.threads < 0) throw Error(ErrorKind::ConfigInvalid, "--threads must be non-negative");
            cfg.threads = *flags.threads;
        }
        if (flags.tolerance) {
            if (!(*flags.tolerance > 0.0)) throw Error(ErrorKind::ConfigInvalid, "--tolerance must be positive");
            const double t = *flags.tolerance;
            cfg.verify_g.tolerance = cfg.verify_m.tolerance = cfg.synthesize.tolerance = t;
            cfg.sweep.tolerance = cfg.zeno.tolerance = cfg.six_settings.tolerance = t;
        }
        fs::create_directories(flags.out);
    } catch (const Error &e) {
        status_line(command, kConfig, "config_invalid", e.what());
        return kConfig;
    } catch (const fs::filesystem_error &e) {
        status_line(command, kConfig, "config_invalid", e.what());
        return kConfig;
    }
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    const fs::path dir(flags.out);
    try {
        Outcome out;
        if (command == "verify-g") out = verify_g(cfg);
        else if (command == "verify-m") out = verify_m(cfg);
        else if (command == "sweep") out = sweep(cfg, dir);
        else if (command == "synthesize") out = synthesize(cfg);
        else if (command == "zeno") out = zeno(cfg, dir);
        else out = six(cfg);
        out.report["passed"] = out.failures.empty();
        out.report["failures"] = out.failures;
        std::string name = command;
        std::replace(name.begin(), name.end(), '-', '_');
        write_json(out.report, dir / (name + ".json"));
        if (!out.failures.empty()) {
            std::string detail;
            for (const auto &f : out.failures) detail += (detail.empty() ? "" : "; ") + f;
            status_line(command, kTolerance, "tolerance_exceeded", detail);
            return kTolerance;
        }
        status_line(command, kSuccess, "", "");
        return kSuccess;
    } catch (const Error &e) {
        switch (e.kind()) {
        case ErrorKind::NoRevivalFound:
        case ErrorKind::ExcessiveLeakage:
        case ErrorKind::SynthesisFailed:
        case ErrorKind::NotDiagonalizableLocally:
            status_line(command, kTolerance, "tolerance_exceeded", e.what());
            return kTolerance;
        case ErrorKind::ConfigInvalid:
            status_line(command, kConfig, "config_invalid", e.what());
            return kConfig;
        default:
            status_line(command, kInternal, "internal_error", e.what());
            return kInternal;
        }
    } catch (const std::exception &e) {
        status_line(command, kInternal, "internal_error", e.what());
        return kInternal;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Always-on Heisenberg chain gate verification"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char *, const char *> commands[] = {
        {"verify-g", "Extract the architecture-1 gate and compare it with G"},
        {"verify-m", "Extract the architecture-2 gate and check its controlled phase"},
        {"sweep", "Gate defect versus detuning, plus the Ising-limit convergence study"},
        {"synthesize", "Numerical CNOT synthesis from G and M"},
        {"zeno", "Barrier-collapse Monte Carlo under gate-timing jitter"},
        {"six-settings", "Enumerate the six global settings and check parity isolation"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON run configuration")->required();
        sub->add_option("--out", flags.out, "Output directory (created if missing)")->capture_default_str();
        sub->add_option("--seed", flags.seed, "Random seed, overrides the config");
        sub->add_option("--threads", flags.threads, "Worker threads, 0 = available parallelism");
        sub->add_option("--tolerance", flags.tolerance, "Command tolerance, overrides the config");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfig;
    }
    return run(app.get_subcommands().front()->get_name(), flags);
}
