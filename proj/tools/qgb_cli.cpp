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

// Command-line front end: datasets, training, bounds, Rademacher estimates,
// experiment sweeps and self-checks.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgb/bounds.hpp"
#include "qgb/checks.hpp"
#include "qgb/datasets.hpp"
#include "qgb/errors.hpp"
#include "qgb/kernels.hpp"
#include "qgb/rademacher.hpp"
#include "qgb/runner.hpp"

namespace {

using nlohmann::json;

json read_json(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return json::parse(is);
    } catch (const json::parse_error &e) {
        throw qgb::InvalidInput(path + ": " + e.what());
    }
}

void write_dataset(const qgb::LabeledDataset &ds, const std::string &out,
                   const std::string &descriptor_out) {
    if (out.empty() || out == "-") {
        qgb::write_states_csv(std::cout, ds);
    } else {
        std::ofstream os(out);
        if (!os) {
            throw std::runtime_error("cannot open " + out + " for writing");
        }
        qgb::write_states_csv(os, ds);
    }
    if (!descriptor_out.empty()) {
        std::ofstream os(descriptor_out);
        if (!os) {
            throw std::runtime_error("cannot open " + descriptor_out + " for writing");
        }
        os << qgb::to_json(ds.generator).dump(2) << '\n';
    }
}

int print_checks(const std::vector<qgb::checks::CheckResult> &results) {
    int failures = 0;
    for (const auto &r : results) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases
                  << " max_error=" << r.max_error << " tol=" << r.tolerance << '\n';
        failures += r.passed() ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Generalization bounds and experiments for variational quantum classifiers"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "OpenMP worker count (overrides QGB_THREADS)");

    // ---- dataset ----
    auto *dataset = app.add_subcommand("dataset", "Sample a dataset and write it as CSV");
    dataset->require_subcommand(1);
    std::string ds_out;
    std::string ds_descriptor;
    std::size_t ds_m = 100;
    std::uint64_t ds_seed = 0;

    auto *annni = dataset->add_subcommand("annni", "ANNNI ground states with phase labels");
    int annni_n = 6;
    qgb::AnnniRanges ranges;
    bool random_labels = false;
    annni->add_option("--m", ds_m, "Number of samples")->capture_default_str();
    annni->add_option("--n-qubits", annni_n, "Chain length")->capture_default_str();
    annni->add_option("--kappa-min", ranges.kappa_min)->capture_default_str();
    annni->add_option("--kappa-max", ranges.kappa_max)->capture_default_str();
    annni->add_option("--h-min", ranges.h_min)->capture_default_str();
    annni->add_option("--h-max", ranges.h_max)->capture_default_str();
    annni->add_flag("--random-labels", random_labels, "Replace labels by fair coin flips");
    annni->add_option("--seed", ds_seed)->capture_default_str();
    annni->add_option("--out", ds_out, "CSV path, '-' for stdout");
    annni->add_option("--descriptor", ds_descriptor, "Write the generator descriptor JSON");

    auto *regression = dataset->add_subcommand("regression", "Encoded regression samples");
    int reg_dim = 6;
    std::string reg_encoding = "angle";
    regression->add_option("--m", ds_m)->capture_default_str();
    regression->add_option("--dim", reg_dim, "Feature dimension")->capture_default_str();
    regression->add_option("--encoding", reg_encoding, "angle or special")
        ->capture_default_str();
    regression->add_option("--seed", ds_seed)->capture_default_str();
    regression->add_option("--out", ds_out);
    regression->add_option("--descriptor", ds_descriptor);

    // ---- train ----
    auto *train = app.add_subcommand("train", "Single training run from a config file");
    std::string train_config;
    train->add_option("--config", train_config, "JSON file with experiment config fields")
        ->required()
        ->check(CLI::ExistingFile);

    // ---- bounds ----
    auto *bounds = app.add_subcommand("bounds", "Closed-form generalization bounds");
    bounds->require_subcommand(1);
    auto *beval = bounds->add_subcommand("eval", "Evaluate one bound and print its record");
    std::string family = "classification";
    qgb::bounds::Query q;
    bool log2 = false;
    beval->add_option("--family", family,
                      "general|regression|classification|kclass|caro|encoding|stability")
        ->required();
    beval->add_option("--M", q.m, "Sample count")->required();
    beval->add_option("--delta", q.delta)->capture_default_str();
    beval->add_option("--L", q.lipschitz, "Risk Lipschitz constant")->capture_default_str();
    beval->add_option("--C", q.risk_bound, "Risk bound")->capture_default_str();
    beval->add_option("--B_O", q.spectral_norm, "Observable spectral norm")
        ->capture_default_str();
    beval->add_option("--K-classes", q.k_classes)->capture_default_str();
    beval->add_option("--T-gates", q.t_gates)->capture_default_str();
    beval->add_option("--d", q.data_dim)->capture_default_str();
    beval->add_option("--k", q.locality)->capture_default_str();
    beval->add_option("--v_L", q.grad_lipschitz)->capture_default_str();
    beval->add_option("--eta", q.learning_rate)->capture_default_str();
    beval->add_option("--K-gates", q.k_gates)->capture_default_str();
    beval->add_option("--T-epochs", q.t_epochs)->capture_default_str();
    beval->add_flag("--log2", log2, "Use base-2 logarithms");

    // ---- rademacher ----
    auto *rad = app.add_subcommand("rademacher", "Empirical Rademacher complexity estimate");
    std::size_t rad_m = 20;
    int rad_n = 3;
    int rad_layers = 3;
    qgb::RademacherOptions ropt;
    rad->add_option("--m", rad_m, "Sample size")->required();
    rad->add_option("--n-qubits", rad_n)->capture_default_str();
    rad->add_option("--layers", rad_layers)->capture_default_str();
    rad->add_option("--n-sigma", ropt.n_sigma)->capture_default_str();
    rad->add_option("--steps", ropt.ascent_steps)->capture_default_str();
    rad->add_option("--restarts", ropt.restarts)->capture_default_str();
    rad->add_option("--lr", ropt.learning_rate)->capture_default_str();
    rad->add_option("--seed", ropt.seed)->capture_default_str();
    rad->add_flag("--sign-closed", ropt.sign_closed, "Maximize over both readout signs");

    // ---- experiment ----
    auto *exp = app.add_subcommand("experiment", "Experiment sweeps");
    exp->require_subcommand(1);
    auto *erun = exp->add_subcommand("run", "Run a sweep and write CSV tables plus a manifest");
    std::string exp_name;
    std::string exp_out;
    std::string exp_config;
    std::string exp_manifest;
    bool exp_full = false;
    bool exp_wall = false;
    int exp_seeds = 0;
    erun->add_option("--name", exp_name, "Experiment name");
    erun->add_option("--config", exp_config, "JSON config overriding the preset")
        ->check(CLI::ExistingFile);
    erun->add_option("--manifest", exp_manifest, "Re-run the config stored in a manifest")
        ->check(CLI::ExistingFile);
    erun->add_flag("--full", exp_full, "Use the published grids instead of desk scale");
    erun->add_option("--seeds", exp_seeds, "Override the number of seeds");
    erun->add_flag("--wall-time", exp_wall, "Record wall-clock time per run");
    erun->add_option("--out", exp_out, "Output directory")->required();
    exp->add_subcommand("list", "List experiment names");

    // ---- check ----
    auto *check = app.add_subcommand("check", "Run property self-checks");
    check->require_subcommand(1);
    std::uint64_t check_seed = 1;
    check->add_option("--seed", check_seed)->capture_default_str();
    auto *cptm = check->add_subcommand("ptm", "PTM orthogonality, expectation routes, purity");
    auto *cgrad = check->add_subcommand("gradients", "Adjoint vs shift rule vs finite differences");
    auto *cback = check->add_subcommand("backends", "Serial vs OpenMP kernels");

    CLI11_PARSE(app, argc, argv);

    if (threads <= 0) {
        if (const char *env = std::getenv("QGB_THREADS")) {
            threads = std::atoi(env);
        }
    }
    qgb::kernels::set_num_threads(threads);

    try {
        if (*annni) {
            qgb::LabeledDataset ds = qgb::sample_annni_dataset(ds_m, annni_n, ranges, ds_seed);
            if (random_labels) {
                ds = qgb::randomize_labels(ds, ds_seed);
            }
            write_dataset(ds, ds_out, ds_descriptor);
        } else if (*regression) {
            const auto ds = qgb::sample_regression_dataset(
                ds_m, reg_dim, ds_seed, qgb::encoding_from_string(reg_encoding));
            write_dataset(ds, ds_out, ds_descriptor);
        } else if (*train) {
            json j = read_json(train_config);
            if (!j.contains("name")) {
                j["name"] = "sample_size_sweep";
            }
            if (!j.contains("grid")) {
                j["grid_param"] = "M";
                j["grid"] = {j.value("train_size", std::size_t{200})};
            }
            if (!j.contains("n_seeds")) {
                j["n_seeds"] = 1;
            }
            const auto cfg = qgb::runner::config_from_json(j);
            const auto records = qgb::runner::run_experiment(cfg);
            qgb::runner::write_records_csv(std::cout, records);
            for (const auto &r : records) {
                if (!r.ok()) {
                    std::cerr << "run failed: " << r.error << '\n';
                    return 1;
                }
            }
        } else if (*beval) {
            q.family = qgb::bounds::family_from_string(family);
            q.log_base = log2 ? qgb::bounds::LogBase::Two : qgb::bounds::LogBase::Natural;
            std::cout << qgb::bounds::to_json(qgb::bounds::evaluate(q)).dump(2) << '\n';
        } else if (*rad) {
            const auto ds = qgb::sample_annni_dataset(rad_m, rad_n, {}, ropt.seed);
            const auto circuit = qgb::CircuitSpec::layered(rad_n, rad_layers);
            const auto est = qgb::rademacher_estimate(ds.states, circuit,
                                                      qgb::Observable::z_first(rad_n), ropt);
            const json out{{"M", rad_m},
                           {"n_qubits", rad_n},
                           {"layers", rad_layers},
                           {"n_sigma", ropt.n_sigma},
                           {"estimate", est.estimate},
                           {"std_error", est.std_error},
                           {"upper_envelope", std::sqrt(1.0 / static_cast<double>(rad_m))}};
            std::cout << out.dump(2) << '\n';
        } else if (*erun) {
            json j;
            if (!exp_manifest.empty()) {
                j = read_json(exp_manifest).at("config");
            } else if (!exp_config.empty()) {
                j = read_json(exp_config);
            }
            if (!exp_name.empty()) {
                j["name"] = exp_name;
            }
            if (!j.contains("name")) {
                throw qgb::InvalidInput("experiment run needs --name, --config or --manifest");
            }
            if (exp_manifest.empty()) {
                j["full"] = exp_full;
            }
            if (exp_seeds > 0) {
                j["n_seeds"] = exp_seeds;
            }
            if (exp_wall) {
                j["record_wall_time"] = true;
            }
            const auto cfg = qgb::runner::config_from_json(j);
            std::filesystem::create_directories(exp_out);
            const auto partial = std::filesystem::path(exp_out) / "records.partial.csv";
            std::ofstream live(partial);
            if (!live) {
                throw std::runtime_error("cannot open " + partial.string());
            }
            qgb::runner::write_records_header(live);
            const auto records = qgb::runner::run_experiment(cfg, [&](const auto &r) {
                qgb::runner::write_record_row(live, r);
                live.flush();
                std::cerr << cfg.name << ' ' << r.grid_param_name << '=' << r.grid_param_value
                          << " seed=" << r.seed << (r.ok() ? "" : " FAILED: " + r.error)
                          << '\n';
            });
            live.close();
            const auto rows = qgb::runner::aggregate(records);
            qgb::runner::emit_results(cfg, records, rows, exp_out);
            std::filesystem::remove(partial);
            std::cout << "wrote " << records.size() << " records to " << exp_out << '\n';
        } else if (exp->got_subcommand("list")) {
            for (const auto &n : qgb::runner::ExperimentConfig::names()) {
                std::cout << n << '\n';
            }
        } else if (*cptm) {
            return print_checks(qgb::checks::check_ptm(50, 100, check_seed));
        } else if (*cgrad) {
            return print_checks(qgb::checks::check_gradients(20, check_seed));
        } else if (*cback) {
            return print_checks(qgb::checks::check_backends(20, check_seed));
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
