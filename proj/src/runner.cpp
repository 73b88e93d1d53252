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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "qgb/bounds.hpp"
#include "qgb/errors.hpp"
#include "qgb/rng.hpp"

#ifndef QGB_VERSION
#define QGB_VERSION "unknown"
#endif

namespace qgb::runner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kTestStream = 0x2001;

// ---- string helpers ----

std::string_view to_string(Randomness r) noexcept {
    return r == Randomness::Dataset ? "dataset" : "init";
}

Randomness randomness_from_string(std::string_view s) {
    if (s == "dataset") {
        return Randomness::Dataset;
    }
    if (s == "init") {
        return Randomness::Init;
    }
    throw InvalidInput("unknown randomness '" + std::string(s) + "'");
}

std::string_view to_string(DatasetKind k) noexcept {
    return k == DatasetKind::Annni ? "annni" : "regression";
}

DatasetKind dataset_from_string(std::string_view s) {
    if (s == "annni") {
        return DatasetKind::Annni;
    }
    if (s == "regression") {
        return DatasetKind::Regression;
    }
    throw InvalidInput("unknown dataset kind '" + std::string(s) + "'");
}

std::string_view to_string(ProjectorMapping m) noexcept {
    return m == ProjectorMapping::PlusToZero ? "plus_to_zero" : "plus_to_one";
}

ProjectorMapping mapping_from_string(std::string_view s) {
    if (s == "plus_to_zero") {
        return ProjectorMapping::PlusToZero;
    }
    if (s == "plus_to_one") {
        return ProjectorMapping::PlusToOne;
    }
    throw InvalidInput("unknown projector mapping '" + std::string(s) + "'");
}

std::string_view to_string(kernels::Backend b) noexcept {
    return b == kernels::Backend::Serial ? "serial" : "openmp";
}

kernels::Backend backend_from_string(std::string_view s) {
    if (s == "serial") {
        return kernels::Backend::Serial;
    }
    if (s == "openmp") {
        return kernels::Backend::OpenMP;
    }
    throw InvalidInput("unknown backend '" + std::string(s) + "'");
}

/// Shortest representation that round-trips; "nan"/"inf" for non-finite.
std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::string format_optional(const std::optional<double> &v) {
    return v ? format_double(*v) : std::string{};
}

std::vector<std::string> numbers(std::initializer_list<double> values) {
    std::vector<std::string> out;
    for (double v : values) {
        out.push_back(format_double(v));
    }
    return out;
}

double parse_double(const std::string &s, const std::string &what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw InvalidInput("grid value '" + s + "' for " + what + " is not a number");
    }
    return v;
}

std::size_t parse_count(const std::string &s, const std::string &what) {
    const double v = parse_double(s, what);
    if (!(v >= 1.0) || v != std::floor(v)) {
        throw InvalidInput("grid value '" + s + "' for " + what + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

// ---- per grid point setup ----

/// Everything that depends on the grid value.
struct Point {
    std::size_t m = 0;
    int n_qubits = 0;
    int data_dim = 0;
    int layers = 0;
    TrainConfig train;
    /// True when the grid value changes the shape of the data (so the test
    /// set cannot be shared across grid points).
    bool data_shape_varies = false;
};

Point resolve(const ExperimentConfig &c, std::size_t g) {
    Point p;
    p.m = c.train_size;
    p.n_qubits = c.n_qubits;
    p.data_dim = c.data_dim;
    p.layers = c.layers;
    p.train = c.train;
    const std::string &v = c.grid.at(g);
    const std::string &k = c.grid_param;
    if (k == "M") {
        p.m = parse_count(v, k);
    } else if (k == "L") {
        p.layers = static_cast<int>(parse_count(v, k));
    } else if (k == "n_qubits") {
        p.n_qubits = static_cast<int>(parse_count(v, k));
        p.data_dim = p.n_qubits;
        p.data_shape_varies = true;
    } else if (k == "d") {
        p.data_dim = static_cast<int>(parse_count(v, k));
        p.data_shape_varies = true;
    } else if (k == "batch_size") {
        p.train.batch_size = parse_count(v, k);
    } else if (k == "learning_rate") {
        p.train.optimizer.learning_rate = parse_double(v, k);
    } else if (k == "optimizer") {
        p.train.optimizer =
            OptimizerSpec::defaults(optimizer_from_string(v), c.train.optimizer.learning_rate);
    } else if (k == "epoch") {
        p.train.epochs = static_cast<int>(parse_count(v, k));
        p.train.exact_epoch_metrics = true;
    } else {
        throw InvalidInput("unknown grid parameter '" + k + "'");
    }
    if (c.dataset == DatasetKind::Regression) {
        if (p.data_dim == 0) {
            p.data_dim = c.encoding == Encoding::SpecialDiag ? p.n_qubits - 2 : p.n_qubits;
        }
        p.n_qubits = qubits_for_encoding(c.encoding, p.data_dim);
    }
    if (p.m < 1) {
        throw InvalidInput("training set size must be >= 1");
    }
    return p;
}

std::uint64_t run_key(std::size_t g, std::size_t s) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(s);
}

LabeledDataset draw(const ExperimentConfig &c, const Point &p, std::size_t size,
                    std::uint64_t seed) {
    if (c.dataset == DatasetKind::Annni) {
        return sample_annni_dataset(size, p.n_qubits, c.ranges, seed, c.train.backend);
    }
    return sample_regression_dataset(size, p.data_dim, seed, c.encoding);
}

struct PointBounds {
    double ours = 0.0;
    double caro = 0.0;
    std::optional<double> encoding_log10;
    int gates = 0;
};

PointBounds bounds_for(const ExperimentConfig &c, const Point &p, std::size_t m) {
    const RiskSpec risk = RiskSpec::of(c.train.risk);
    const double b_o = 1.0;
    PointBounds b;
    b.gates = 3 * p.n_qubits * p.layers;
    b.ours = bounds::general(risk.lipschitz, b_o, risk.bound_c, m, c.delta);
    b.caro = bounds::caro(std::max(b.gates, 1), b_o, m, c.delta);
    if (c.encoding == Encoding::SpecialDiag) {
        double l10 = 0.0;
        bounds::encoding(risk.lipschitz, b_o, risk.bound_c, p.data_dim, c.encoding_locality, m,
                         c.delta, bounds::LogBase::Natural, &l10);
        b.encoding_log10 = l10;
    }
    return b;
}

double stability_log10(const ExperimentConfig &c, const Point &p, const PointBounds &b,
                       std::size_t m, int epochs) {
    const RiskSpec risk = RiskSpec::of(c.train.risk);
    return bounds::stability(risk.lipschitz, 1.0, std::max(b.gates, 1), 1.0, m,
                             p.train.optimizer.learning_rate, epochs)
        .log10;
}

} // namespace

// ---- config ----

void ExperimentConfig::validate() const {
    const auto &known = names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw InvalidInput("unknown experiment '" + name + "'");
    }
    if (grid.empty()) {
        throw InvalidInput("experiment grid is empty");
    }
    if (n_seeds < 1) {
        throw InvalidInput("n_seeds must be >= 1");
    }
    if (test_size < 1) {
        throw InvalidInput("test_size must be >= 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InvalidInput("delta must lie in (0, 1)");
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
        (void)resolve(*this, g);
    }
}

const std::vector<std::string> &ExperimentConfig::names() {
    static const std::vector<std::string> kNames{
        "sample_size_sweep", "layer_sweep",   "bound_comparison", "random_label",
        "regression_suite",  "qubit_sweep",   "special_encoding_sweep",
        "batch_sweep",       "epoch_curve",   "lr_sweep",         "optimizer_sweep"};
    return kNames;
}

ExperimentConfig ExperimentConfig::preset(const std::string &name, bool full) {
    ExperimentConfig c;
    c.name = name;
    c.n_seeds = full ? 10 : 5;
    c.test_size = full ? 10000 : 2000;
    c.n_qubits = 6;
    c.layers = 20;
    c.train.loss = LossKind::Hinge;
    c.train.risk = RiskKind::ZeroOne;
    c.train.optimizer = OptimizerSpec::defaults(OptimizerKind::Adam, 0.005);
    c.train.batch_size = 200;
    c.train.epochs = 100;
    const std::size_t fixed_m = full ? 2000 : 500;
    const auto m_grid = full ? numbers({10, 500, 1000, 1500, 2000}) : numbers({10, 200, 1000});

    if (name == "sample_size_sweep" || name == "bound_comparison") {
        c.grid_param = "M";
        c.grid = m_grid;
        c.randomness = Randomness::Dataset;
        if (name == "bound_comparison") {
            c.train.risk = RiskKind::CaroTrace;
        }
    } else if (name == "random_label") {
        c.grid_param = "M";
        c.grid = full ? m_grid : numbers({50, 500});
        c.n_seeds = 10;
        c.randomness = Randomness::Dataset;
        c.randomize_labels = true;
    } else if (name == "layer_sweep") {
        c.grid_param = "L";
        c.grid = full ? numbers({20, 50, 100, 200, 500}) : numbers({20, 50, 100});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.train.loss = LossKind::Caro;
        c.train.risk = RiskKind::CaroTrace;
        c.randomness = Randomness::Init;
    } else if (name == "regression_suite") {
        c.grid_param = "M";
        c.grid = m_grid;
        c.dataset = DatasetKind::Regression;
        c.encoding = Encoding::AngleRy;
        c.data_dim = 6;
        c.z_all_observable = true;
        c.train.loss = LossKind::MSE;
        c.train.risk = RiskKind::Absolute;
        c.randomness = Randomness::Dataset;
    } else if (name == "qubit_sweep") {
        c.grid_param = "n_qubits";
        c.grid = full ? numbers({2, 4, 6, 8, 10}) : numbers({2, 4, 6});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.dataset = DatasetKind::Regression;
        c.encoding = Encoding::AngleRy;
        c.z_all_observable = true;
        c.train.loss = LossKind::MSE;
        c.train.risk = RiskKind::Absolute;
        c.randomness = Randomness::Init;
    } else if (name == "special_encoding_sweep") {
        c.grid_param = "d";
        c.grid = full ? numbers({1, 4, 7, 10}) : numbers({1, 4});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.dataset = DatasetKind::Regression;
        c.encoding = Encoding::SpecialDiag;
        c.z_all_observable = true;
        c.train.loss = LossKind::MSE;
        c.train.risk = RiskKind::Absolute;
        c.randomness = Randomness::Init;
    } else if (name == "batch_sweep") {
        c.grid_param = "batch_size";
        c.grid = full ? numbers({1, 200, 500, 1000, 2000}) : numbers({10, 200, 500});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.randomness = Randomness::Init;
    } else if (name == "epoch_curve") {
        c.grid_param = "epoch";
        c.grid = numbers({100});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.train.optimizer = OptimizerSpec::defaults(OptimizerKind::SGD, 0.005);
        c.train.exact_epoch_metrics = true;
        c.randomness = Randomness::Init;
    } else if (name == "lr_sweep") {
        c.grid_param = "learning_rate";
        c.grid = full ? numbers({0.0005, 0.005, 0.05, 0.5, 5}) : numbers({0.005, 0.05, 0.5});
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.randomness = Randomness::Init;
    } else if (name == "optimizer_sweep") {
        c.grid_param = "optimizer";
        c.grid = {"SGD", "Adam", "RMSprop", "AdaGrad", "Lion"};
        c.n_seeds = full ? 10 : 3;
        c.train_size = fixed_m;
        c.randomness = Randomness::Init;
    } else {
        throw InvalidInput("unknown experiment '" + name + "'");
    }
    return c;
}

nlohmann::json to_json(const ExperimentConfig &c) {
    const OptimizerSpec &o = c.train.optimizer;
    return {
        {"name", c.name},
        {"grid_param", c.grid_param},
        {"grid", c.grid},
        {"n_seeds", c.n_seeds},
        {"base_seed", c.base_seed},
        {"dataset", to_string(c.dataset)},
        {"encoding", to_string(c.encoding)},
        {"kappa_range", {c.ranges.kappa_min, c.ranges.kappa_max}},
        {"h_range", {c.ranges.h_min, c.ranges.h_max}},
        {"train_size", c.train_size},
        {"test_size", c.test_size},
        {"n_qubits", c.n_qubits},
        {"data_dim", c.data_dim},
        {"layers", c.layers},
        {"observable", c.z_all_observable ? "z_all" : "z_first"},
        {"loss", to_string(c.train.loss)},
        {"risk", to_string(c.train.risk)},
        {"optimizer",
         {{"kind", to_string(o.kind)},
          {"learning_rate", o.learning_rate},
          {"beta1", o.beta1},
          {"beta2", o.beta2},
          {"epsilon", o.epsilon},
          {"decay", o.decay}}},
        {"batch_size", c.train.batch_size},
        {"epochs", c.train.epochs},
        {"projector_mapping", to_string(c.train.mapping)},
        {"exact_epoch_metrics", c.train.exact_epoch_metrics},
        {"backend", to_string(c.train.backend)},
        {"randomness", to_string(c.randomness)},
        {"randomize_labels", c.randomize_labels},
        {"delta", c.delta},
        {"encoding_locality", c.encoding_locality},
        {"record_wall_time", c.record_wall_time},
    };
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
    try {
        ExperimentConfig c =
            ExperimentConfig::preset(j.at("name").get<std::string>(), j.value("full", false));
        if (j.contains("grid")) {
            c.grid.clear();
            for (const auto &v : j.at("grid")) {
                c.grid.push_back(v.is_string() ? v.get<std::string>()
                                               : format_double(v.get<double>()));
            }
        }
        c.grid_param = j.value("grid_param", c.grid_param);
        c.n_seeds = j.value("n_seeds", c.n_seeds);
        c.base_seed = j.value("base_seed", c.base_seed);
        if (j.contains("dataset")) {
            c.dataset = dataset_from_string(j.at("dataset").get<std::string>());
        }
        if (j.contains("encoding")) {
            c.encoding = encoding_from_string(j.at("encoding").get<std::string>());
        }
        if (j.contains("kappa_range")) {
            c.ranges.kappa_min = j.at("kappa_range").at(0).get<double>();
            c.ranges.kappa_max = j.at("kappa_range").at(1).get<double>();
        }
        if (j.contains("h_range")) {
            c.ranges.h_min = j.at("h_range").at(0).get<double>();
            c.ranges.h_max = j.at("h_range").at(1).get<double>();
        }
        c.train_size = j.value("train_size", c.train_size);
        c.test_size = j.value("test_size", c.test_size);
        c.n_qubits = j.value("n_qubits", c.n_qubits);
        c.data_dim = j.value("data_dim", c.data_dim);
        c.layers = j.value("layers", c.layers);
        if (j.contains("observable")) {
            const auto obs = j.at("observable").get<std::string>();
            if (obs != "z_all" && obs != "z_first") {
                throw InvalidInput("observable must be z_first or z_all");
            }
            c.z_all_observable = obs == "z_all";
        }
        if (j.contains("loss")) {
            c.train.loss = loss_from_string(j.at("loss").get<std::string>());
        }
        if (j.contains("risk")) {
            c.train.risk = risk_from_string(j.at("risk").get<std::string>());
        }
        if (j.contains("optimizer")) {
            const auto &o = j.at("optimizer");
            if (o.is_string()) {
                c.train.optimizer = OptimizerSpec::defaults(
                    optimizer_from_string(o.get<std::string>()), c.train.optimizer.learning_rate);
            } else {
                const OptimizerKind kind = o.contains("kind")
                                               ? optimizer_from_string(o.at("kind").get<std::string>())
                                               : c.train.optimizer.kind;
                OptimizerSpec spec = OptimizerSpec::defaults(
                    kind, o.value("learning_rate", c.train.optimizer.learning_rate));
                spec.beta1 = o.value("beta1", spec.beta1);
                spec.beta2 = o.value("beta2", spec.beta2);
                spec.epsilon = o.value("epsilon", spec.epsilon);
                spec.decay = o.value("decay", spec.decay);
                c.train.optimizer = spec;
            }
        }
        if (j.contains("learning_rate")) {
            c.train.optimizer.learning_rate = j.at("learning_rate").get<double>();
        }
        c.train.batch_size = j.value("batch_size", c.train.batch_size);
        c.train.epochs = j.value("epochs", c.train.epochs);
        if (j.contains("projector_mapping")) {
            c.train.mapping = mapping_from_string(j.at("projector_mapping").get<std::string>());
        }
        c.train.exact_epoch_metrics = j.value("exact_epoch_metrics", c.train.exact_epoch_metrics);
        if (j.contains("backend")) {
            c.train.backend = backend_from_string(j.at("backend").get<std::string>());
        }
        if (j.contains("randomness")) {
            c.randomness = randomness_from_string(j.at("randomness").get<std::string>());
        }
        c.randomize_labels = j.value("randomize_labels", c.randomize_labels);
        c.delta = j.value("delta", c.delta);
        c.encoding_locality = j.value("encoding_locality", c.encoding_locality);
        c.record_wall_time = j.value("record_wall_time", c.record_wall_time);
        c.validate();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("malformed experiment config: ") + e.what());
    }
}

// ---- execution ----

std::vector<RunRecord> run_experiment(const ExperimentConfig &config,
                                      const RecordCallback &on_record) {
    config.validate();
    std::vector<RunRecord> out;
    auto emit = [&](RunRecord r) {
        if (on_record) {
            on_record(r);
        }
        out.push_back(std::move(r));
    };
    const std::uint64_t base = config.base_seed;
    const bool per_epoch = config.grid_param == "epoch";

    // Cached shared draws, keyed by their derivation seed.
    std::map<std::uint64_t, LabeledDataset> cache;
    auto cached = [&](const Point &p, std::size_t size, std::uint64_t seed) -> const LabeledDataset & {
        auto it = cache.find(seed);
        if (it == cache.end()) {
            it = cache.emplace(seed, draw(config, p, size, seed)).first;
        }
        return it->second;
    };

    for (std::size_t g = 0; g < config.grid.size(); ++g) {
        const Point p = resolve(config, g);
        const std::size_t shape_key = p.data_shape_varies ? g : 0;
        const PointBounds pb = bounds_for(config, p, p.m);

        for (int s = 0; s < config.n_seeds; ++s) {
            const auto su = static_cast<std::size_t>(s);
            RunRecord rec;
            rec.experiment = config.name;
            rec.grid_param_name = config.grid_param;
            rec.grid_param_value = config.grid[g];
            rec.grid_index = g;
            rec.seed = base + su;
            rec.m = p.m;
            rec.bound_ours = pb.ours;
            rec.bound_caro = pb.caro;
            rec.bound_encoding_log10 = pb.encoding_log10;
            rec.bound_stability_log10 = stability_log10(config, p, pb, p.m, p.train.epochs);

            const auto t0 = std::chrono::steady_clock::now();
            try {
                const CircuitSpec circuit = CircuitSpec::layered(p.n_qubits, p.layers);
                const Observable obs = config.z_all_observable ? Observable::z_all(p.n_qubits)
                                                               : Observable::z_first(p.n_qubits);
                const std::uint64_t test_seed = rng::derive(base, kTestStream, shape_key);
                if (config.randomize_labels && cache.find(test_seed) == cache.end()) {
                    // Random labels define the population, so the shared test set is relabeled too.
                    cache.emplace(test_seed,
                                  randomize_labels(draw(config, p, config.test_size, test_seed),
                                                   rng::derive(base, rng::kLabelStream,
                                                               run_key(shape_key, 0xFFFFFFFFu))));
                }
                const LabeledDataset &test = cached(p, config.test_size, test_seed);
                LabeledDataset train_set;
                std::vector<double> theta0;
                const auto n_params = static_cast<std::size_t>(circuit.n_params());
                if (config.randomness == Randomness::Dataset) {
                    train_set = draw(config, p, p.m,
                                     rng::derive(base, rng::kDatasetStream, run_key(g, su)));
                    theta0 = initial_parameters(n_params, rng::derive(base, rng::kInitStream));
                } else {
                    train_set = cached(p, p.m,
                                       rng::derive(base, rng::kDatasetStream,
                                                   run_key(shape_key, 0xFFFFFFFFu)));
                    theta0 = initial_parameters(n_params,
                                                rng::derive(base, rng::kInitStream, su + 1));
                }
                if (config.randomize_labels) {
                    train_set = randomize_labels(
                        train_set, rng::derive(base, rng::kLabelStream, run_key(g, su)));
                }
                TrainConfig tc = p.train;
                tc.seed = rng::derive(base, rng::kShuffleStream, run_key(g, su));
                const TrainHistory hist =
                    train_from(tc, std::move(theta0), train_set, circuit, obs,
                               per_epoch ? &test : nullptr);
                const double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                if (per_epoch) {
                    for (const EpochRecord &e : hist.records) {
                        RunRecord r = rec;
                        r.grid_param_value = std::to_string(e.epoch);
                        r.train_error = e.train_error;
                        r.test_error = e.test_error;
                        r.gen_gap = generalization_gap(r.train_error, r.test_error);
                        r.bound_stability_log10 = stability_log10(config, p, pb, p.m, e.epoch);
                        r.wall_time_s = config.record_wall_time ? elapsed : 0.0;
                        emit(std::move(r));
                    }
                    continue;
                }
                rec.train_error = evaluate(hist.theta, train_set, circuit, obs, tc.risk,
                                           tc.mapping, tc.backend);
                rec.test_error =
                    evaluate(hist.theta, test, circuit, obs, tc.risk, tc.mapping, tc.backend);
                rec.gen_gap = generalization_gap(rec.train_error, rec.test_error);
                if (!std::isfinite(rec.train_error) || !std::isfinite(rec.test_error)) {
                    rec.error = "non-finite error metric";
                }
            } catch (const std::exception &e) {
                rec.error = e.what();
            }
            if (!rec.ok()) {
                rec.train_error = rec.test_error = rec.gen_gap = kNaN;
            }
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rec.wall_time_s = config.record_wall_time ? elapsed : 0.0;
            emit(std::move(rec));
        }
    }
    return out;
}

// ---- aggregation ----

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidInput("cannot summarize an empty group");
    }
    Summary s{0.0, values[0], values[0]};
    for (double v : values) {
        s.mean += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean /= static_cast<double>(values.size());
    // Guard against rounding pushing the mean just outside [min, max].
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

std::vector<AggregateRow> aggregate(std::span<const RunRecord> records) {
    if (records.empty()) {
        throw InvalidInput("no records to aggregate");
    }
    std::vector<std::string> order;
    std::map<std::string, std::vector<const RunRecord *>> groups;
    for (const RunRecord &r : records) {
        auto [it, inserted] = groups.try_emplace(r.grid_param_value);
        if (inserted) {
            order.push_back(r.grid_param_value);
        }
        it->second.push_back(&r);
    }
    std::vector<AggregateRow> rows;
    rows.reserve(order.size());
    for (const std::string &key : order) {
        const auto &group = groups.at(key);
        const RunRecord &first = *group.front();
        AggregateRow row;
        row.experiment = first.experiment;
        row.grid_param_name = first.grid_param_name;
        row.grid_param_value = key;
        row.m = first.m;
        row.bound_ours = first.bound_ours;
        row.bound_caro = first.bound_caro;
        row.bound_encoding_log10 = first.bound_encoding_log10;
        row.bound_stability_log10 = first.bound_stability_log10;
        std::vector<double> train, test, gap;
        for (const RunRecord *r : group) {
            if (!r->ok()) {
                ++row.n_failed;
                continue;
            }
            train.push_back(r->train_error);
            test.push_back(r->test_error);
            gap.push_back(r->gen_gap);
        }
        row.n_runs = train.size();
        if (row.n_runs > 0) {
            row.train_error = summarize(train);
            row.test_error = summarize(test);
            row.gen_gap = summarize(gap);
        } else {
            row.train_error = row.test_error = row.gen_gap = {kNaN, kNaN, kNaN};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- persistence ----

void write_records_header(std::ostream &os) {
    os << "experiment,grid_param_name,grid_param_value,seed,M,train_error,test_error,gen_gap,"
          "bound_ours,bound_caro,bound_encoding_log10,bound_stability_log10,wall_time_s\n";
}

void write_record_row(std::ostream &os, const RunRecord &r) {
    os << r.experiment << ',' << r.grid_param_name << ',' << r.grid_param_value << ',' << r.seed
       << ',' << r.m << ',' << format_double(r.train_error) << ','
       << format_double(r.test_error) << ',' << format_double(r.gen_gap) << ','
       << format_double(r.bound_ours) << ',' << format_double(r.bound_caro) << ','
       << format_optional(r.bound_encoding_log10) << ','
       << format_double(r.bound_stability_log10) << ',' << format_double(r.wall_time_s) << '\n';
}

void write_records_csv(std::ostream &os, std::span<const RunRecord> records) {
    write_records_header(os);
    for (const RunRecord &r : records) {
        write_record_row(os, r);
    }
}

void write_aggregate_csv(std::ostream &os, std::span<const AggregateRow> rows) {
    os << "experiment,grid_param_name,grid_param_value,M,n_runs,n_failed,"
          "train_error_mean,train_error_min,train_error_max,"
          "test_error_mean,test_error_min,test_error_max,"
          "gen_gap_mean,gen_gap_min,gen_gap_max,"
          "bound_ours,bound_caro,bound_encoding_log10,bound_stability_log10\n";
    auto put = [&os](const Summary &s) {
        os << format_double(s.mean) << ',' << format_double(s.min) << ','
           << format_double(s.max) << ',';
    };
    for (const AggregateRow &r : rows) {
        os << r.experiment << ',' << r.grid_param_name << ',' << r.grid_param_value << ',' << r.m
           << ',' << r.n_runs << ',' << r.n_failed << ',';
        put(r.train_error);
        put(r.test_error);
        put(r.gen_gap);
        os << format_double(r.bound_ours) << ',' << format_double(r.bound_caro) << ','
           << format_optional(r.bound_encoding_log10) << ','
           << format_double(r.bound_stability_log10) << '\n';
    }
}

nlohmann::json manifest(const ExperimentConfig &config, std::span<const RunRecord> records) {
    nlohmann::json seeds = nlohmann::json::array();
    for (int s = 0; s < config.n_seeds; ++s) {
        seeds.push_back(config.base_seed + static_cast<std::uint64_t>(s));
    }
    const RiskSpec risk = RiskSpec::of(config.train.risk);
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t g = 0; g < config.grid.size(); ++g) {
        const Point p = resolve(config, g);
        nlohmann::json pt{{"grid_param_value", config.grid[g]},
                          {"M", p.m},
                          {"n_qubits", p.n_qubits},
                          {"layers", p.layers},
                          {"T_gates", 3 * p.n_qubits * p.layers},
                          {"eta", p.train.optimizer.learning_rate},
                          {"T_epochs", p.train.epochs}};
        if (config.encoding == Encoding::SpecialDiag) {
            pt["d"] = p.data_dim;
            pt["k"] = config.encoding_locality;
        }
        points.push_back(pt);
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const RunRecord &r : records) {
        if (!r.ok()) {
            failures.push_back({{"grid_param_value", r.grid_param_value},
                                {"seed", r.seed},
                                {"error", r.error}});
        }
    }
    return {
        {"code_version", QGB_VERSION},
        {"config", to_json(config)},
        {"seeds", seeds},
        {"bound_inputs",
         {{"delta", config.delta},
          {"log_base", "e"},
          {"risk", to_string(config.train.risk)},
          {"L", risk.lipschitz},
          {"C", risk.bound_c},
          {"B_O", 1.0},
          {"v_L", 1.0},
          {"points", points}}},
        {"n_records", records.size()},
        {"failures", failures},
    };
}

void emit_results(const ExperimentConfig &config, std::span<const RunRecord> records,
                  std::span<const AggregateRow> rows, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    }
    auto write = [](const std::filesystem::path &path, const auto &fn) {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        }
        fn(os);
        os.flush();
        if (!os) {
            throw std::runtime_error("write failed for " + path.string());
        }
    };
    write(out_dir / "records.csv", [&](std::ostream &os) { write_records_csv(os, records); });
    write(out_dir / "aggregate.csv", [&](std::ostream &os) { write_aggregate_csv(os, rows); });
    write(out_dir / "manifest.json",
          [&](std::ostream &os) { os << manifest(config, records).dump(2) << '\n'; });
}

} // namespace qgb::runner
