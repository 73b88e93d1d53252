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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgb/circuit.hpp"
#include "qgb/datasets.hpp"
#include "qgb/training.hpp"

/**
 * @file
 * Experiment sweeps: presets, execution, aggregation over seeds and
 * persistence as CSV tables plus a JSON manifest.
 *
 * Seeding: run (g, s) at grid index g and seed index s draws every stream
 * from derive(base_seed, stream, key) where key depends only on (g, s), so
 * appending grid points or seeds never changes existing rows.
 */

namespace qgb::runner {

/// Which draw varies from one seed to the next.
enum class Randomness {
    Dataset, ///< fresh training set per seed, shared initial parameters
    Init,    ///< one training set, fresh initial parameters per seed
};

struct ExperimentConfig {
    std::string name;
    std::string grid_param;
    std::vector<std::string> grid;
    int n_seeds = 1;
    std::uint64_t base_seed = 0;

    DatasetKind dataset = DatasetKind::Annni;
    Encoding encoding = Encoding::None;
    AnnniRanges ranges;
    std::size_t train_size = 0; ///< M when M is not the grid parameter
    std::size_t test_size = 2000;
    int n_qubits = 6;
    int data_dim = 0; ///< regression only; 0 means "same as n_qubits"
    int layers = 20;
    bool z_all_observable = false;

    TrainConfig train;
    Randomness randomness = Randomness::Dataset;
    bool randomize_labels = false;
    double delta = 0.1;
    /// Locality of the encoding generators in the encoding bound.
    int encoding_locality = 3;
    /// When false wall_time_s is written as 0 so reruns are byte-identical.
    bool record_wall_time = false;

    /// Throws InvalidInput on an empty grid, n_seeds < 1 or unknown names.
    void validate() const;

    static const std::vector<std::string> &names();
    /// Desk-scale defaults, or the published grids when `full` is set.
    static ExperimentConfig preset(const std::string &name, bool full = false);
};

nlohmann::json to_json(const ExperimentConfig &c);
/// Missing keys keep the preset value for `name`.
ExperimentConfig config_from_json(const nlohmann::json &j);

struct RunRecord {
    std::string experiment;
    std::string grid_param_name;
    std::string grid_param_value;
    std::size_t grid_index = 0;
    std::uint64_t seed = 0; ///< base_seed + seed index
    std::size_t m = 0;
    double train_error = 0.0;
    double test_error = 0.0;
    double gen_gap = 0.0;
    double bound_ours = 0.0;
    double bound_caro = 0.0;
    std::optional<double> bound_encoding_log10;
    double bound_stability_log10 = 0.0;
    double wall_time_s = 0.0;
    /// Empty on success; otherwise the failure reason. Metrics are NaN then.
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

using RecordCallback = std::function<void(const RunRecord &)>;

/// Runs every grid point x seed in (grid, seed) order. `on_record` sees each
/// record as soon as it exists. Failed runs are recorded, not thrown.
std::vector<RunRecord> run_experiment(const ExperimentConfig &config,
                                      const RecordCallback &on_record = {});

struct Summary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Throws InvalidInput on an empty span.
Summary summarize(std::span<const double> values);

struct AggregateRow {
    std::string experiment;
    std::string grid_param_name;
    std::string grid_param_value;
    std::size_t n_runs = 0;   ///< successful runs only
    std::size_t n_failed = 0;
    std::size_t m = 0;
    Summary train_error;
    Summary test_error;
    Summary gen_gap;
    double bound_ours = 0.0;
    double bound_caro = 0.0;
    std::optional<double> bound_encoding_log10;
    double bound_stability_log10 = 0.0;
};

/// One row per distinct grid value, in order of first appearance. Throws
/// InvalidInput on no records.
std::vector<AggregateRow> aggregate(std::span<const RunRecord> records);

/// Column header and one line per record, in the results schema.
void write_records_header(std::ostream &os);
void write_record_row(std::ostream &os, const RunRecord &r);
void write_records_csv(std::ostream &os, std::span<const RunRecord> records);
void write_aggregate_csv(std::ostream &os, std::span<const AggregateRow> rows);

/// Run manifest: config, seeds, code version, bound inputs and failures.
nlohmann::json manifest(const ExperimentConfig &config, std::span<const RunRecord> records);

/// Writes records.csv, aggregate.csv and manifest.json under out_dir,
/// creating it. Throws std::runtime_error naming the path on IO failure.
void emit_results(const ExperimentConfig &config, std::span<const RunRecord> records,
                  std::span<const AggregateRow> rows, const std::filesystem::path &out_dir);

} // namespace qgb::runner
