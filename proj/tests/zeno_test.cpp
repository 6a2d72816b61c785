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
#include <omp.h>

#include <filesystem>
#include <fstream>

#include "chainlab/errors.hpp"
#include "chainlab/zeno.hpp"

using namespace chainlab;

namespace {

const ZeemanLevels kLevels = ZeemanLevels::from_delta(100.0, 1.0);

ZenoConfig cfg(int every, double jitter, int trials, JitterModel model = JitterModel::PerGate) {
    ZenoConfig c;
    c.collapse_every = every;
    c.jitter_stddev = jitter;
    c.trials = trials;
    c.jitter_model = model;
    return c;
}

}  // namespace

TEST(ZenoSetup, FiveSpinSection) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 6);
    EXPECT_EQ(z.chain.n, 5);
    EXPECT_EQ(z.sequence.size(), 6u);
    EXPECT_NEAR(z.sequence[0].duration, std::acos(-1.0) / 3.0, 1e-15);
    EXPECT_NEAR(vector_norm(z.initial), 1.0, 1e-14);
}

TEST(ZenoConfig, Validation) {
    EXPECT_THROW(cfg(-1, 0.05, 10).validate(), Error);
    EXPECT_THROW(cfg(0, -0.1, 10).validate(), Error);
    EXPECT_THROW(cfg(0, 0.05, 0).validate(), Error);
    try {
        cfg(0, 0.05, 0).validate();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConfigInvalid);
    }
}

TEST(Zeno, NoJitterMeansNoWrongCollapse) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 4);
    for (int every : {0, 1, 2}) {
        const auto s = zeno_run(z, cfg(every, 0.0, 50));
        EXPECT_EQ(s.wrong_collapse_probability, 0.0);
        EXPECT_GT(s.mean_fidelity, 0.999);
    }
}

TEST(Zeno, ReproducibleAndThreadIndependent) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 6);
    const auto c = cfg(2, 0.1, 64);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto a = zeno_run(z, c);
    omp_set_num_threads(4);
    const auto b = zeno_run(z, c);
    omp_set_num_threads(saved);
    ASSERT_EQ(a.trials.size(), b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        EXPECT_EQ(a.trials[i].wrong_collapse, b.trials[i].wrong_collapse);
        EXPECT_EQ(a.trials[i].fidelity, b.trials[i].fidelity);
    }
    auto c2 = c;
    c2.seed = 2;
    const auto d = zeno_run(z, c2);
    bool differs = false;
    for (std::size_t i = 0; i < a.trials.size(); ++i) differs |= a.trials[i].fidelity != d.trials[i].fidelity;
    EXPECT_TRUE(differs);
}

TEST(Zeno, FrequentCollapseSuppressesSharedTimingError) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 20);
    const auto never = zeno_run(z, cfg(0, 0.05, 800, JitterModel::PerTrial));
    const auto every = zeno_run(z, cfg(1, 0.05, 800, JitterModel::PerTrial));
    EXPECT_GT(every.mean_fidelity, never.mean_fidelity + 5.0 * (every.fidelity_stderr + never.fidelity_stderr));
}

TEST(Zeno, StatsAgreeWithTrials) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 4);
    const auto s = zeno_run(z, cfg(1, 0.1, 100));
    double wrong = 0.0, fid = 0.0;
    for (const auto &t : s.trials) {
        wrong += t.wrong_collapse;
        fid += t.fidelity;
    }
    EXPECT_NEAR(s.wrong_collapse_probability, wrong / 100.0, 1e-12);
    EXPECT_NEAR(s.mean_fidelity, fid / 100.0, 1e-12);
}

TEST(Zeno, CsvColumns) {
    const auto z = arch1_zeno_setup(kLevels, 1.0, 2);
    const auto s = zeno_run(z, cfg(0, 0.05, 5));
    const auto path = std::filesystem::temp_directory_path() / "chainlab_zeno_test.csv";
    write_zeno_csv(s, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "trial,wrong_collapse,fidelity");
    int rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    EXPECT_EQ(rows, 5);
    std::filesystem::remove(path);
    EXPECT_THROW(write_zeno_csv(s, "/nonexistent/dir/x.csv"), Error);
}
