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

#include "chainlab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "chainlab/errors.hpp"

namespace chainlab {

namespace {

[[noreturn]] void invalid(const std::string &where, const std::string &what) {
    throw Error(ErrorKind::ConfigInvalid, where + ": " + what);
}

void check_object(const Json &j, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) invalid(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : j.items()) {
        if (!ok.contains(key)) invalid(where, "unknown key \"" + key + "\"");
    }
}

std::string path(const std::string &where, const char *key) { return where.empty() ? key : where + "." + key; }

double as_number(const Json &v, const std::string &where) {
    if (!v.is_number()) invalid(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(where, "expected a finite number");
    return x;
}

std::int64_t as_integer(const Json &v, const std::string &where) {
    if (!v.is_number_integer()) invalid(where, "expected an integer");
    return v.get<std::int64_t>();
}

void read(const Json &j, const std::string &where, const char *key, double &out) {
    if (j.contains(key)) out = as_number(j.at(key), path(where, key));
}

void read(const Json &j, const std::string &where, const char *key, std::optional<double> &out) {
    if (j.contains(key) && !j.at(key).is_null()) out = as_number(j.at(key), path(where, key));
}

void read(const Json &j, const std::string &where, const char *key, int &out) {
    if (!j.contains(key)) return;
    const auto v = as_integer(j.at(key), path(where, key));
    if (v < INT32_MIN || v > INT32_MAX) invalid(path(where, key), "integer out of range");
    out = static_cast<int>(v);
}

void read(const Json &j, const std::string &where, const char *key, std::vector<double> &out) {
    if (!j.contains(key)) return;
    const auto &v = j.at(key);
    if (!v.is_array()) invalid(path(where, key), "expected an array of numbers");
    out.clear();
    for (const auto &x : v) out.push_back(as_number(x, path(where, key)));
}

void read(const Json &j, const std::string &where, const char *key, std::vector<int> &out) {
    if (!j.contains(key)) return;
    const auto &v = j.at(key);
    if (!v.is_array()) invalid(path(where, key), "expected an array of integers");
    out.clear();
    for (const auto &x : v) out.push_back(static_cast<int>(as_integer(x, path(where, key))));
}

std::string as_string(const Json &v, const std::string &where) {
    if (!v.is_string()) invalid(where, "expected a string");
    return v.get<std::string>();
}

Coupling coupling_from(const std::string &s, const std::string &where) {
    if (s == "heisenberg") return Coupling::Heisenberg;
    if (s == "ising") return Coupling::EffectiveIsing;
    invalid(where, "coupling must be \"heisenberg\" or \"ising\"");
}

void positive(double v, const std::string &where) {
    if (!(v > 0.0)) invalid(where, "must be positive");
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

std::string coupling_name(Coupling c) { return c == Coupling::Heisenberg ? "heisenberg" : "ising"; }

std::string jitter_model_name(JitterModel m) { return m == JitterModel::PerGate ? "per_gate" : "per_trial"; }

Json to_json(const ChainSpec &chain) {
    return {{"n", chain.n},
            {"J", chain.J},
            {"roles", chain.roles_string()},
            {"levels", {{"A", chain.levels.A}, {"B", chain.levels.B}, {"C", chain.levels.C}}}};
}

ChainSpec chain_from_json(const Json &j) {
    check_object(j, "chain", {"n", "J", "roles", "levels"});
    for (const char *k : {"n", "J", "roles", "levels"}) {
        if (!j.contains(k)) invalid("chain", std::string("missing key \"") + k + "\"");
    }
    const auto &lv = j.at("levels");
    check_object(lv, "chain.levels", {"A", "B", "C"});
    ZeemanLevels levels;
    for (const char *k : {"A", "B", "C"}) {
        if (!lv.contains(k)) invalid("chain.levels", std::string("missing key \"") + k + "\"");
    }
    levels.A = as_number(lv.at("A"), "chain.levels.A");
    levels.B = as_number(lv.at("B"), "chain.levels.B");
    levels.C = as_number(lv.at("C"), "chain.levels.C");
    const auto n = as_integer(j.at("n"), "chain.n");
    const std::string roles = as_string(j.at("roles"), "chain.roles");
    if (n != static_cast<std::int64_t>(roles.size())) invalid("chain", "n differs from the number of roles");
    try {
        return make_chain(roles, as_number(j.at("J"), "chain.J"), levels);
    } catch (const Error &e) {
        invalid("chain", e.what());
    }
}

Json to_json(const ZeemanSchedule &schedule) {
    Json segs = Json::array();
    for (const auto &s : schedule.segments) {
        Json seg{{"duration", s.duration}, {"energies", s.energies}};
        if (s.ramp_to) {
            seg["ramp_to"] = *s.ramp_to;
            seg["ramp_steps"] = s.ramp_steps;
        }
        segs.push_back(std::move(seg));
    }
    return {{"segments", segs}};
}

ZeemanSchedule schedule_from_json(const Json &j) {
    check_object(j, "schedule", {"segments"});
    if (!j.contains("segments") || !j.at("segments").is_array()) invalid("schedule", "expected a segments array");
    ZeemanSchedule s;
    for (const auto &seg : j.at("segments")) {
        const std::string where = "schedule.segments";
        check_object(seg, where, {"duration", "energies", "ramp_to", "ramp_steps"});
        if (!seg.contains("duration") || !seg.contains("energies")) invalid(where, "duration and energies required");
        Segment out;
        out.duration = as_number(seg.at("duration"), where + ".duration");
        positive(out.duration, where + ".duration");
        read(seg, where, "energies", out.energies);
        if (seg.contains("ramp_to")) {
            std::vector<double> to;
            read(seg, where, "ramp_to", to);
            out.ramp_to = std::move(to);
        }
        read(seg, where, "ramp_steps", out.ramp_steps);
        s.segments.push_back(std::move(out));
    }
    return s;
}

Json to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) invalid("matrix", "expected nested arrays");
    ComplexMatrix m(j.size(), j.front().size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols()) invalid("matrix", "ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto &z = j[i][c];
            if (!z.is_array() || z.size() != 2) invalid("matrix", "entries must be [re, im] pairs");
            m(i, c) = {as_number(z[0], "matrix"), as_number(z[1], "matrix")};
        }
    }
    return m;
}

Json to_json(const GateReport &r) {
    Json j{{"logical_unitary", to_json(r.logical_unitary)},
           {"leakage", r.leakage},
           {"residual_local_phases", r.residual_local_phases}};
    j["revival_time"] = r.revival_time ? Json(*r.revival_time) : Json(nullptr);
    j["invariants"] = r.invariants ? Json{{"g1", complex_pair(r.invariants->g1)}, {"g2", r.invariants->g2}} : Json(nullptr);
    j["defect_worst"] = r.defect_worst ? Json(*r.defect_worst) : Json(nullptr);
    j["target_distance"] = r.target_distance ? Json(*r.target_distance) : Json(nullptr);
    return j;
}

Json to_json(const SynthesisResult &r) {
    Json layers = Json::array();
    for (const auto &[a, b] : r.layers) layers.push_back({{"qubit0", to_json(a)}, {"qubit1", to_json(b)}});
    return {{"n_uses", r.n_uses},
            {"fidelity", r.fidelity},
            {"infidelity", 1.0 - r.fidelity},
            {"success", r.success},
            {"parameters", r.parameters},
            {"layers", layers}};
}

Json to_json(const ZenoStats &s) {
    return {{"collapse_every", s.config.collapse_every},
            {"jitter_stddev", s.config.jitter_stddev},
            {"jitter_model", jitter_model_name(s.config.jitter_model)},
            {"trials", s.config.trials},
            {"seed", s.config.seed},
            {"wrong_collapse_probability", s.wrong_collapse_probability},
            {"wrong_collapse_stderr", s.wrong_collapse_stderr},
            {"mean_fidelity", s.mean_fidelity},
            {"fidelity_stderr", s.fidelity_stderr}};
}

RunConfig::RunConfig() { verify_m.expected_phase = -std::numbers::pi / std::sqrt(5.0); }

ZeemanLevels RunConfig::levels() const { return ZeemanLevels::from_delta(delta, J, base, delta_cb); }

RunConfig parse_run_config(const Json &doc) {
    RunConfig c;
    check_object(doc, "config",
                 {"J", "delta", "delta_cb", "base", "seed", "threads", "coupling", "verify_g", "verify_m", "sweep",
                  "synthesize", "zeno", "six_settings"});
    read(doc, "", "J", c.J);
    positive(c.J, "J");
    read(doc, "", "delta", c.delta);
    positive(c.delta, "delta");
    read(doc, "", "delta_cb", c.delta_cb);
    if (c.delta_cb) positive(*c.delta_cb, "delta_cb");
    read(doc, "", "base", c.base);
    if (doc.contains("seed")) {
        const auto s = as_integer(doc.at("seed"), "seed");
        if (s < 0) invalid("seed", "must be non-negative");
        c.seed = static_cast<std::uint64_t>(s);
    }
    read(doc, "", "threads", c.threads);
    if (c.threads < 0) invalid("threads", "must be non-negative");
    if (doc.contains("coupling")) c.coupling = coupling_from(as_string(doc.at("coupling"), "coupling"), "coupling");

    if (doc.contains("verify_g")) {
        const auto &s = doc.at("verify_g");
        const std::string w = "verify_g";
        check_object(s, w, {"window_lo", "window_hi", "grid_points", "threshold", "t_gate", "tolerance"});
        auto &v = c.verify_g;
        read(s, w, "window_lo", v.window_lo);
        read(s, w, "window_hi", v.window_hi);
        read(s, w, "grid_points", v.grid_points);
        read(s, w, "threshold", v.threshold);
        read(s, w, "t_gate", v.t_gate);
        read(s, w, "tolerance", v.tolerance);
        if (!(v.window_hi > v.window_lo) || v.window_lo < 0) invalid(w, "window must satisfy 0 <= lo < hi");
        if (v.grid_points < 3) invalid(w + ".grid_points", "must be at least 3");
        if (!(v.threshold > 0.0 && v.threshold < 1.0)) invalid(w + ".threshold", "must lie in (0, 1)");
        if (v.t_gate && *v.t_gate < 0) invalid(w + ".t_gate", "must be non-negative");
        positive(v.tolerance, w + ".tolerance");
    }
    if (doc.contains("verify_m")) {
        const auto &s = doc.at("verify_m");
        const std::string w = "verify_m";
        check_object(s, w, {"resonance_offset", "t_gate", "expected_phase", "max_off_diagonal", "tolerance"});
        auto &v = c.verify_m;
        read(s, w, "resonance_offset", v.resonance_offset);
        read(s, w, "t_gate", v.t_gate);
        read(s, w, "expected_phase", v.expected_phase);
        read(s, w, "max_off_diagonal", v.max_off_diagonal);
        read(s, w, "tolerance", v.tolerance);
        if (v.t_gate && *v.t_gate < 0) invalid(w + ".t_gate", "must be non-negative");
        positive(v.max_off_diagonal, w + ".max_off_diagonal");
        positive(v.tolerance, w + ".tolerance");
    }
    if (doc.contains("sweep")) {
        const auto &s = doc.at("sweep");
        const std::string w = "sweep";
        check_object(s, w, {"delta_values", "threshold", "format", "ising_grid", "tolerance"});
        auto &v = c.sweep;
        read(s, w, "delta_values", v.delta_values);
        read(s, w, "threshold", v.threshold);
        if (s.contains("format")) {
            try {
                v.format = parse_table_format(as_string(s.at("format"), w + ".format"));
            } catch (const Error &e) {
                invalid(w + ".format", e.what());
            }
        }
        read(s, w, "ising_grid", v.ising_grid);
        read(s, w, "tolerance", v.tolerance);
        SweepSpec spec{v.delta_values, c.J, c.base, v.threshold, 4.0, c.coupling};
        spec.validate();
        if (v.ising_grid.size() < 3) invalid(w + ".ising_grid", "needs at least three values");
        for (double d : v.ising_grid) positive(d, w + ".ising_grid");
        if (v.tolerance < 0) invalid(w + ".tolerance", "must be non-negative");
    }
    if (doc.contains("synthesize")) {
        const auto &s = doc.at("synthesize");
        const std::string w = "synthesize";
        check_object(s, w, {"starts", "g_uses", "m_uses", "max_uses", "tolerance"});
        auto &v = c.synthesize;
        read(s, w, "starts", v.starts);
        read(s, w, "g_uses", v.g_uses);
        read(s, w, "m_uses", v.m_uses);
        read(s, w, "max_uses", v.max_uses);
        read(s, w, "tolerance", v.tolerance);
        if (v.starts < 1) invalid(w + ".starts", "must be positive");
        for (int u : {v.g_uses, v.m_uses, v.max_uses}) {
            if (u < 1 || u > 6) invalid(w, "use counts must lie in [1, 6]");
        }
        positive(v.tolerance, w + ".tolerance");
    }
    if (doc.contains("zeno")) {
        const auto &s = doc.at("zeno");
        const std::string w = "zeno";
        check_object(s, w, {"gates", "jitter", "trials", "collapse_every", "jitter_model", "tolerance"});
        auto &v = c.zeno;
        read(s, w, "gates", v.gates);
        read(s, w, "jitter", v.jitter);
        read(s, w, "trials", v.trials);
        read(s, w, "collapse_every", v.collapse_every);
        read(s, w, "tolerance", v.tolerance);
        if (s.contains("jitter_model")) {
            const auto m = as_string(s.at("jitter_model"), w + ".jitter_model");
            if (m == "per_gate") {
                v.jitter_model = JitterModel::PerGate;
            } else if (m == "per_trial") {
                v.jitter_model = JitterModel::PerTrial;
            } else {
                invalid(w + ".jitter_model", "must be \"per_gate\" or \"per_trial\"");
            }
        }
        if (v.gates < 1) invalid(w + ".gates", "must be positive");
        if (v.jitter < 0) invalid(w + ".jitter", "must be non-negative");
        if (v.trials < 2) invalid(w + ".trials", "must be at least 2");
        if (v.collapse_every.size() < 2) invalid(w + ".collapse_every", "needs at least two schedules");
        for (int e : v.collapse_every) {
            if (e < 0) invalid(w + ".collapse_every", "entries must be >= 0");
        }
        positive(v.tolerance, w + ".tolerance");
    }
    if (doc.contains("six_settings")) {
        const auto &s = doc.at("six_settings");
        const std::string w = "six_settings";
        check_object(s, w, {"duration", "tolerance"});
        read(s, w, "duration", c.six_settings.duration);
        read(s, w, "tolerance", c.six_settings.tolerance);
        positive(c.six_settings.duration, w + ".duration");
        positive(c.six_settings.tolerance, w + ".tolerance");
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot read config " + p.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::ConfigInvalid, std::string("malformed JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

void write_json(const Json &doc, const std::filesystem::path &p) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + p.string());
    out << doc.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + p.string());
}

}  // namespace chainlab
