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
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qgb/circuit.hpp"
#include "qgb/datasets.hpp"
#include "qgb/kernels.hpp"
#include "qgb/pauli.hpp"

namespace qgb {

enum class LossKind { Hinge, MSE, Caro };
enum class RiskKind { ZeroOne, Absolute, CaroTrace };
enum class OptimizerKind { SGD, Adam, RMSprop, AdaGrad, Lion };

/// Class projector on qubit 0 for the trace risk/loss.
enum class ProjectorMapping {
    PlusToZero, ///< rho_{+1} = |0><0|, rho_{-1} = |1><1| (default)
    PlusToOne,  ///< rho_{+1} = |1><1|, rho_{-1} = |0><0|
};

std::string_view to_string(LossKind k) noexcept;
std::string_view to_string(RiskKind k) noexcept;
std::string_view to_string(OptimizerKind k) noexcept;
LossKind loss_from_string(std::string_view s);
RiskKind risk_from_string(std::string_view s);
OptimizerKind optimizer_from_string(std::string_view s);

/// Risk bound C and Lipschitz constant L used by the bound formulas.
struct RiskSpec {
    RiskKind kind = RiskKind::ZeroOne;
    double bound_c = 1.0;
    double lipschitz = 0.5;

    static RiskSpec of(RiskKind kind) noexcept;
};

// ---- per-sample losses and risks (prediction = observable expectation) ----

double hinge_value(double prediction, double label) noexcept;
double mse_value(double prediction, double label) noexcept;
/// 1 - Tr[rho_y U rho U^dagger] given prediction = <Z_0>.
double caro_value(double prediction, double label,
                  ProjectorMapping mapping = ProjectorMapping::PlusToZero) noexcept;

/// ZeroOne uses sign(0) = +1.
double risk(RiskKind kind, double prediction, double label,
            ProjectorMapping mapping = ProjectorMapping::PlusToZero) noexcept;

kernels::PointLoss point_loss(LossKind kind,
                              ProjectorMapping mapping = ProjectorMapping::PlusToZero);

// ---- batch losses ----

double hinge_loss(std::span<const double> theta, const LabeledDataset &batch,
                  const CircuitSpec &circuit, const Observable &obs);
double mse_loss(std::span<const double> theta, const LabeledDataset &batch,
                const CircuitSpec &circuit, const Observable &obs);
/// Projector readout on qubit 0; no observable argument.
double caro_loss(std::span<const double> theta, const LabeledDataset &batch,
                 const CircuitSpec &circuit,
                 ProjectorMapping mapping = ProjectorMapping::PlusToZero);

/// Mean risk over the dataset. Throws InvalidInput when empty.
double evaluate(std::span<const double> theta, const LabeledDataset &dataset,
                const CircuitSpec &circuit, const Observable &obs, RiskKind kind,
                ProjectorMapping mapping = ProjectorMapping::PlusToZero,
                kernels::Backend backend = kernels::Backend::OpenMP);

double evaluate_predictions(std::span<const double> predictions, std::span<const double> labels,
                            RiskKind kind,
                            ProjectorMapping mapping = ProjectorMapping::PlusToZero);

/// test - train; negative values are legitimate.
constexpr double generalization_gap(double train_error, double test_error) noexcept {
    return test_error - train_error;
}

// ---- optimizers ----

struct OptimizerSpec {
    OptimizerKind kind = OptimizerKind::Adam;
    double learning_rate = 0.005;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double decay = 0.99; ///< RMSprop

    /// Community defaults per kind (Adam 0.9/0.999/1e-8, RMSprop 0.99/1e-8,
    /// AdaGrad eps 1e-10, Lion 0.9/0.99).
    static OptimizerSpec defaults(OptimizerKind kind, double learning_rate);
};

struct OptimizerState {
    OptimizerSpec spec;
    std::int64_t step_count = 0;
    std::vector<double> first;  ///< Adam/Lion momentum
    std::vector<double> second; ///< Adam/RMSprop/AdaGrad accumulators

    OptimizerState() = default;
    OptimizerState(OptimizerSpec s, std::size_t n_params);
};

/// One update in place. Throws NumericError on a non-finite gradient and
/// InvalidInput on a shape mismatch.
void step_inplace(OptimizerState &state, std::span<double> theta,
                  std::span<const double> gradient);

std::pair<OptimizerState, std::vector<double>> step(OptimizerState state,
                                                    std::vector<double> theta,
                                                    std::span<const double> gradient);

// ---- training loop ----

struct TrainConfig {
    LossKind loss = LossKind::Hinge;
    OptimizerSpec optimizer;
    std::size_t batch_size = 200;
    int epochs = 100;
    std::uint64_t seed = 0;
    ProjectorMapping mapping = ProjectorMapping::PlusToZero;
    /// Risk reported as train/test error in the history.
    RiskKind risk = RiskKind::ZeroOne;
    /// Evaluate exact train (and test, if given) errors after every epoch.
    /// Otherwise the history carries running averages gathered during the
    /// epoch and test_error is NaN.
    bool exact_epoch_metrics = false;
    kernels::Backend backend = kernels::Backend::OpenMP;
};

struct EpochRecord {
    int epoch = 0;
    double loss = 0.0;
    double train_error = 0.0;
    double test_error = 0.0;
};

struct TrainHistory {
    std::vector<EpochRecord> records;
    std::vector<double> theta;
};

/// Standard-normal initial angles keyed by seed.
std::vector<double> initial_parameters(std::size_t n_params, std::uint64_t seed);

/**
 * Mini-batch training. Each epoch shuffles with a generator keyed by
 * (seed, epoch), splits into batches of batch_size (the last one may be
 * short) and takes one optimizer step per batch.
 */
TrainHistory train(const TrainConfig &config, const LabeledDataset &dataset,
                   const CircuitSpec &circuit, const Observable &obs,
                   const LabeledDataset *test_set = nullptr);

/// Same, starting from explicit parameters.
TrainHistory train_from(const TrainConfig &config, std::vector<double> theta,
                        const LabeledDataset &dataset, const CircuitSpec &circuit,
                        const Observable &obs, const LabeledDataset *test_set = nullptr);

} // namespace qgb
