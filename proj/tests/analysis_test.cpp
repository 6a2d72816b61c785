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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "chainlab/analysis.hpp"
#include "chainlab/config.hpp"
#include "chainlab/errors.hpp"

using namespace chainlab;

namespace {

std::filesystem::path tmp(const std::string &name) { return std::filesystem::temp_directory_path() / name; }

std::vector<std::string> lines_of(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Table, OneRecordCsv) {
    const std::vector<DefectRecord> r = {{100.0, 1.0466, 1.7e-3, 0.01, 2e-5}};
    const auto p = tmp("chainlab_one.csv");
    emit_table(r, p, TableFormat::Csv);
    const auto l = lines_of(p);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "delta,t_r,defect_worst,phase_noise_rad,leakage");
    EXPECT_EQ(l[1].rfind("100,1.0466,", 0), 0u) << l[1];
    std::filesystem::remove(p);
}

TEST(Table, RoundTripsBothFormats) {
    const std::vector<DefectRecord> r = {{5.0, std::nullopt, 0.0, 0.0, 0.0},
                                         {10.0, 1.0123456789012, 0.174, -0.02, 3.3e-3},
                                         {1000.0, 1.0471, 1.79e-5, 1e-4, 2e-7}};
    for (auto fmt : {TableFormat::Csv, TableFormat::Json}) {
        const auto p = tmp(fmt == TableFormat::Csv ? "chainlab_rt.csv" : "chainlab_rt.json");
        emit_table(r, p, fmt);
        const auto back = read_table(p, fmt);
        ASSERT_EQ(back.size(), r.size());
        EXPECT_TRUE(back[0].missing());
        for (std::size_t i = 1; i < r.size(); ++i) {
            EXPECT_NEAR(*back[i].t_r, *r[i].t_r, 1e-11 * std::abs(*r[i].t_r));
            EXPECT_NEAR(back[i].defect_worst, r[i].defect_worst, 1e-11 * r[i].defect_worst);
            EXPECT_NEAR(back[i].phase_noise_rad, r[i].phase_noise_rad, 1e-11 * std::abs(r[i].phase_noise_rad));
            EXPECT_NEAR(back[i].leakage, r[i].leakage, 1e-11 * r[i].leakage);
        }
        std::filesystem::remove(p);
    }
}

TEST(Table, JsonKeysAndNulls) {
    const std::vector<DefectRecord> r = {{5.0, std::nullopt, 0.0, 0.0, 0.0}, {10.0, 1.0, 0.1, 0.2, 0.3}};
    const auto p = tmp("chainlab_keys.json");
    emit_table(r, p, TableFormat::Json);
    std::ifstream in(p);
    const auto doc = Json::parse(in);
    ASSERT_TRUE(doc.is_array());
    for (const char *k : {"delta", "t_r", "defect_worst", "phase_noise_rad", "leakage"}) {
        EXPECT_TRUE(doc[1].contains(k)) << k;
    }
    EXPECT_TRUE(doc[0]["t_r"].is_null());
    std::filesystem::remove(p);
}

TEST(Table, FormatNames) {
    EXPECT_EQ(parse_table_format("csv"), TableFormat::Csv);
    EXPECT_EQ(parse_table_format("json"), TableFormat::Json);
    EXPECT_THROW(parse_table_format("xml"), Error);
    EXPECT_THROW(emit_table({}, "/nonexistent/dir/t.csv", TableFormat::Csv), Error);
}

TEST(Record, PhaseNoiseProbability) {
    DefectRecord r;
    r.phase_noise_rad = std::acos(-1.0);
    EXPECT_NEAR(r.phase_noise_probability(), 1.0, 1e-15);
    r.phase_noise_rad = 0.02;
    EXPECT_NEAR(r.phase_noise_probability(), 1e-4, 1e-8);
}

TEST(Slope, SyntheticPowerLaw) {
    const std::vector<double> x = {1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
    EXPECT_NEAR(loglog_slope(x, y), -1.5, 1e-12);
    EXPECT_THROW(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
}

TEST(SweepSpec, Validation) {
    SweepSpec s;
    EXPECT_NO_THROW(s.validate());
    s.delta_values = {10, 5};
    EXPECT_THROW(s.validate(), Error);
    s.delta_values = {10};
    EXPECT_THROW(s.validate(), Error);
    s.delta_values = {-1, 5};
    EXPECT_THROW(s.validate(), Error);
}

TEST(Convergence, FourSpinSlopes) {
    const std::vector<double> grid = {0, 20, 50, 100, 200};
    const auto st = ising_convergence(grid, 1.0, "ABAB", 200);
    ASSERT_EQ(st.records.size(), grid.size());
    EXPECT_GT(st.records[0].distance, 0.3);  // no splitting: Ising is a poor model
    EXPECT_NEAR(st.leakage_slope, -2.0, 0.15);
    EXPECT_NEAR(st.distance_slope, -1.0, 0.15);
}

TEST(Convergence, TwoSpinSlopes) {
    const std::vector<double> grid = {20, 50, 100, 200};
    const auto st = ising_convergence(grid, 1.0, "AB", 200);
    EXPECT_NEAR(st.leakage_slope, -2.0, 0.15);
    EXPECT_NEAR(st.distance_slope, -1.0, 0.15);
}

TEST(Sweep, DefectFallsWithSplitting) {
    SweepSpec s;
    s.delta_values = {50, 100, 300};
    const auto r = defect_sweep(s);
    ASSERT_EQ(r.size(), 3u);
    for (const auto &x : r) ASSERT_FALSE(x.missing());
    EXPECT_GT(r[0].defect_worst, r[1].defect_worst);
    EXPECT_GT(r[1].defect_worst, r[2].defect_worst);
    EXPECT_LT(r[1].defect_worst, 1e-2);
}
