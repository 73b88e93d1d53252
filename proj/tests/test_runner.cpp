// Copyright 2026 The qgenbound Authors
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

#include "qgb/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qgb/bounds.hpp"
#include "qgb/errors.hpp"

using namespace qgb;
using namespace qgb::runner;

namespace {

ExperimentConfig tiny(const std::string &name) {
    ExperimentConfig c = ExperimentConfig::preset(name);
    c.n_qubits = 2;
    c.layers = 1;
    c.test_size = 30;
    c.train.epochs = 2;
    c.train.batch_size = 8;
    c.n_seeds = 2;
    if (c.grid_param == "M") {
        c.grid = {"5", "12"};
    } else {
        c.train_size = 10;
    }
    if (c.grid_param == "n_qubits") {
        c.grid = {"2", "3"};
    }
    if (c.grid_param == "d") {
        c.grid = {"1"};
    }
    if (c.grid_param == "L") {
        c.grid = {"1", "2"};
    }
    if (c.grid_param == "epoch") {
        c.grid = {"3"};
    }
    if (c.grid_param == "batch_size") {
        c.grid = {"4", "10"};
    }
    c.data_dim = 0;
    return c;
}

std::string records_text(const std::vector<RunRecord> &r) {
    std::ostringstream os;
    write_records_csv(os, r);
    return os.str();
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST(Presets, AllNamesAreValidAtBothScales) {
    EXPECT_EQ(ExperimentConfig::names().size(), 11U);
    for (const auto &n : ExperimentConfig::names()) {
        EXPECT_NO_THROW(ExperimentConfig::preset(n, false).validate()) << n;
        EXPECT_NO_THROW(ExperimentConfig::preset(n, true).validate()) << n;
    }
    EXPECT_THROW(ExperimentConfig::preset("nope"), InvalidInput);
    const auto full = ExperimentConfig::preset("sample_size_sweep", true);
    EXPECT_EQ(full.grid, (std::vector<std::string>{"10", "500", "1000", "1500", "2000"}));
    EXPECT_EQ(full.n_seeds, 10);
    EXPECT_EQ(full.test_size, 10000U);
}

TEST(Config, ValidationErrors) {
    ExperimentConfig c = tiny("sample_size_sweep");
    c.grid.clear();
    EXPECT_THROW(c.validate(), InvalidInput);
    c = tiny("sample_size_sweep");
    c.n_seeds = 0;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = tiny("sample_size_sweep");
    c.grid = {"ten"};
    EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Config, JsonRoundTrip) {
    const ExperimentConfig c = tiny("optimizer_sweep");
    const ExperimentConfig d = config_from_json(to_json(c));
    EXPECT_EQ(to_json(c), to_json(d));
    EXPECT_THROW(config_from_json(nlohmann::json{{"grid", {1}}}), InvalidInput);
}

TEST(Run, SampleSizeSweepContract) {
    const ExperimentConfig c = tiny("sample_size_sweep");
    std::size_t streamed = 0;
    const auto records = run_experiment(c, [&](const RunRecord &) { ++streamed; });
    ASSERT_EQ(records.size(), 4U);
    EXPECT_EQ(streamed, 4U);
    for (const RunRecord &r : records) {
        EXPECT_TRUE(r.ok()) << r.error;
        EXPECT_EQ(r.bound_ours, bounds::classification(r.m, 0.1));
        EXPECT_EQ(r.gen_gap, r.test_error - r.train_error);
        EXPECT_FALSE(r.bound_encoding_log10.has_value());
        EXPECT_EQ(r.wall_time_s, 0.0);
    }
    EXPECT_EQ(records[0].grid_param_value, "5");
    EXPECT_EQ(records[0].seed, 0U);
    EXPECT_EQ(records[1].seed, 1U);
    EXPECT_EQ(records[2].m, 12U);
}

TEST(Run, DeterministicTables) {
    for (const char *name : {"sample_size_sweep", "layer_sweep", "random_label", "epoch_curve"}) {
        const ExperimentConfig c = tiny(name);
        EXPECT_EQ(records_text(run_experiment(c)), records_text(run_experiment(c))) << name;
    }
}

TEST(Run, AddingSeedsKeepsExistingRows) {
    ExperimentConfig c = tiny("layer_sweep");
    const auto a = run_experiment(c);
    c.n_seeds = 3;
    const auto b = run_experiment(c);
    EXPECT_EQ(a[0].train_error, b[0].train_error);
    EXPECT_EQ(a[1].test_error, b[1].test_error);
    EXPECT_EQ(a[2].test_error, b[3].test_error);
}

TEST(Run, EveryExperimentRunsAtTinyScale) {
    for (const auto &n : ExperimentConfig::names()) {
        const auto records = run_experiment(tiny(n));
        ASSERT_FALSE(records.empty()) << n;
        for (const auto &r : records) {
            EXPECT_TRUE(r.ok()) << n << ": " << r.error;
        }
    }
}

TEST(Run, EpochCurveEmitsOneRowPerEpoch) {
    const auto records = run_experiment(tiny("epoch_curve"));
    ASSERT_EQ(records.size(), 6U);
    EXPECT_EQ(records[0].grid_param_value, "1");
    EXPECT_EQ(records[2].grid_param_value, "3");
    EXPECT_LT(records[0].bound_stability_log10, records[2].bound_stability_log10);
}

TEST(Run, SpecialEncodingCarriesEncodingBound) {
    const auto records = run_experiment(tiny("special_encoding_sweep"));
    ASSERT_TRUE(records[0].bound_encoding_log10.has_value());
    double l10 = 0.0;
    bounds::encoding(1, 1, 1, 1, 3, 10, 0.1, bounds::LogBase::Natural, &l10);
    EXPECT_EQ(*records[0].bound_encoding_log10, l10);
}

TEST(Run, FailuresAreRecordedNotThrown) {
    ExperimentConfig c = tiny("qubit_sweep");
    c.grid = {"2", "13"};
    c.n_seeds = 1;
    const auto records = run_experiment(c);
    ASSERT_EQ(records.size(), 2U);
    EXPECT_TRUE(records[0].ok());
    EXPECT_FALSE(records[1].ok());
    EXPECT_TRUE(std::isnan(records[1].gen_gap));
    const auto rows = aggregate(records);
    EXPECT_EQ(rows[1].n_failed, 1U);
    EXPECT_EQ(rows[1].n_runs, 0U);
    EXPECT_EQ(manifest(c, records).at("failures").size(), 1U);
}

TEST(Aggregate, Examples) {
    RunRecord a;
    a.grid_param_value = "10";
    a.train_error = 0.0;
    a.test_error = 0.1;
    a.gen_gap = 0.1;
    RunRecord b = a;
    b.test_error = 0.3;
    b.gen_gap = 0.3;
    const std::vector<RunRecord> one{a};
    const auto r1 = aggregate(one);
    EXPECT_EQ(r1[0].gen_gap.min, r1[0].gen_gap.mean);
    EXPECT_EQ(r1[0].gen_gap.max, r1[0].gen_gap.mean);
    const std::vector<RunRecord> two{a, b};
    const auto r2 = aggregate(two);
    ASSERT_EQ(r2.size(), 1U);
    EXPECT_NEAR(r2[0].gen_gap.mean, 0.2, 1e-15);
    EXPECT_EQ(r2[0].gen_gap.min, 0.1);
    EXPECT_EQ(r2[0].gen_gap.max, 0.3);
    EXPECT_THROW(aggregate(std::vector<RunRecord>{}), InvalidInput);
    EXPECT_THROW(summarize(std::vector<double>{}), InvalidInput);
}

TEST(Aggregate, MinMeanMaxOrderingOnRealOutput) {
    const auto rows = aggregate(run_experiment(tiny("batch_sweep")));
    ASSERT_EQ(rows.size(), 2U);
    for (const auto &r : rows) {
        for (const Summary &s : {r.train_error, r.test_error, r.gen_gap}) {
            EXPECT_LE(s.min, s.mean);
            EXPECT_LE(s.mean, s.max);
        }
    }
}

TEST(Emit, SchemaAndManifestReplay) {
    const ExperimentConfig c = tiny("random_label");
    const auto records = run_experiment(c);
    const auto dir = std::filesystem::temp_directory_path() / "qgb_runner_test";
    std::filesystem::remove_all(dir);
    emit_results(c, records, aggregate(records), dir);
    const std::string text = slurp(dir / "records.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "experiment,grid_param_name,grid_param_value,seed,M,train_error,test_error,gen_gap,"
              "bound_ours,bound_caro,bound_encoding_log10,bound_stability_log10,wall_time_s");
    EXPECT_TRUE(std::filesystem::exists(dir / "aggregate.csv"));

    std::ifstream is(dir / "manifest.json");
    const auto m = nlohmann::json::parse(is);
    EXPECT_EQ(m.at("seeds").size(), 2U);
    const ExperimentConfig replay = config_from_json(m.at("config"));
    const auto again = run_experiment(replay);
    EXPECT_EQ(records_text(again), text);
    std::filesystem::remove_all(dir);
}

TEST(Emit, UnwritableDirectoryNamesPath) {
    const ExperimentConfig c = tiny("sample_size_sweep");
    std::vector<RunRecord> r(1);
    try {
        emit_results(c, r, aggregate(r), "/proc/qgb_cannot_write_here");
        FAIL() << "expected an IO error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("/proc/qgb_cannot_write_here"), std::string::npos);
    }
}

TEST(Run, RandomLabelsAlsoRelabelTheTestSet) {
    ExperimentConfig c = tiny("random_label");
    c.test_size = 1000;
    c.grid = {"12"};
    const auto randomized = run_experiment(c);
    // Any fixed classifier scores near chance against coin-flip labels.
    for (const auto &r : randomized) {
        EXPECT_GT(r.test_error, 0.43);
        EXPECT_LT(r.test_error, 0.57);
    }
    c.randomize_labels = false;
    const auto plain = run_experiment(c);
    EXPECT_NE(plain[0].test_error, randomized[0].test_error);
}
