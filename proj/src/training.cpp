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

#include "qgb/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qgb/errors.hpp"
#include "qgb/rng.hpp"

namespace qgb {

std::string_view to_string(LossKind k) noexcept {
    switch (k) {
    case LossKind::Hinge:
        return "hinge";
    case LossKind::MSE:
        return "mse";
    case LossKind::Caro:
        return "caro";
    }
    return "?";
}

std::string_view to_string(RiskKind k) noexcept {
    switch (k) {
    case RiskKind::ZeroOne:
        return "zero_one";
    case RiskKind::Absolute:
        return "absolute";
    case RiskKind::CaroTrace:
        return "caro_trace";
    }
    return "?";
}

std::string_view to_string(OptimizerKind k) noexcept {
    switch (k) {
    case OptimizerKind::SGD:
        return "SGD";
    case OptimizerKind::Adam:
        return "Adam";
    case OptimizerKind::RMSprop:
        return "RMSprop";
    case OptimizerKind::AdaGrad:
        return "AdaGrad";
    case OptimizerKind::Lion:
        return "Lion";
    }
    return "?";
}

LossKind loss_from_string(std::string_view s) {
    for (auto k : {LossKind::Hinge, LossKind::MSE, LossKind::Caro}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    throw InvalidInput("unknown loss '" + std::string(s) + "'");
}

RiskKind risk_from_string(std::string_view s) {
    for (auto k : {RiskKind::ZeroOne, RiskKind::Absolute, RiskKind::CaroTrace}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    throw InvalidInput("unknown risk '" + std::string(s) + "'");
}

OptimizerKind optimizer_from_string(std::string_view s) {
    for (auto k : {OptimizerKind::SGD, OptimizerKind::Adam, OptimizerKind::RMSprop,
                   OptimizerKind::AdaGrad, OptimizerKind::Lion}) {
        std::string a(s);
        std::string b(to_string(k));
        std::transform(a.begin(), a.end(), a.begin(), ::tolower);
        std::transform(b.begin(), b.end(), b.begin(), ::tolower);
        if (a == b) {
            return k;
        }
    }
    throw InvalidInput("unknown optimizer '" + std::string(s) + "'");
}

RiskSpec RiskSpec::of(RiskKind kind) noexcept {
    switch (kind) {
    case RiskKind::ZeroOne:
        return {kind, 1.0, 0.5};
    case RiskKind::Absolute:
    case RiskKind::CaroTrace:
        return {kind, 1.0, 1.0};
    }
    return {kind, 1.0, 1.0};
}

double hinge_value(double prediction, double label) noexcept {
    return std::max(0.0, 1.0 - label * prediction);
}

double mse_value(double prediction, double label) noexcept {
    const double r = label - prediction;
    return r * r;
}

namespace {
/// Sign in (1 - s * y * <Z0>) / 2.
double projector_sign(ProjectorMapping mapping) noexcept {
    return mapping == ProjectorMapping::PlusToZero ? 1.0 : -1.0;
}

bool is_binary(double y) noexcept { return y == 1.0 || y == -1.0; }

void require_binary(std::span<const double> labels, std::string_view what) {
    for (double y : labels) {
        if (!is_binary(y)) {
            throw InvalidInput(std::string(what) + " needs labels in {-1, +1}, got " +
                               std::to_string(y));
        }
    }
}

bool needs_binary(LossKind k) noexcept { return k != LossKind::MSE; }
bool needs_binary(RiskKind k) noexcept { return k != RiskKind::Absolute; }
} // namespace

double caro_value(double prediction, double label, ProjectorMapping mapping) noexcept {
    return 0.5 * (1.0 - projector_sign(mapping) * label * prediction);
}

double risk(RiskKind kind, double prediction, double label, ProjectorMapping mapping) noexcept {
    switch (kind) {
    case RiskKind::ZeroOne: {
        const double sign = prediction >= 0.0 ? 1.0 : -1.0;
        return sign != label ? 1.0 : 0.0;
    }
    case RiskKind::Absolute:
        return std::abs(prediction - label);
    case RiskKind::CaroTrace:
        return caro_value(prediction, label, mapping);
    }
    return 0.0;
}

kernels::PointLoss point_loss(LossKind kind, ProjectorMapping mapping) {
    switch (kind) {
    case LossKind::Hinge:
        return [](double p, double y) {
            const double margin = 1.0 - y * p;
            return margin > 0.0 ? kernels::LossPoint{margin, -y} : kernels::LossPoint{0.0, 0.0};
        };
    case LossKind::MSE:
        return [](double p, double y) {
            return kernels::LossPoint{(y - p) * (y - p), -2.0 * (y - p)};
        };
    case LossKind::Caro: {
        const double s = projector_sign(mapping);
        return [s](double p, double y) {
            return kernels::LossPoint{0.5 * (1.0 - s * y * p), -0.5 * s * y};
        };
    }
    }
    throw InvalidInput("unknown loss kind");
}

namespace {
double mean_of(std::span<const double> predictions, std::span<const double> labels,
               const kernels::PointLoss &loss) {
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        s += loss(predictions[i], labels[i]).value;
    }
    return s / static_cast<double>(predictions.size());
}

std::vector<double> predict_all(std::span<const double> theta, const LabeledDataset &ds,
                                const CircuitSpec &circuit, const Observable &obs,
                                kernels::Backend backend) {
    if (ds.size() == 0) {
        throw InvalidInput("empty dataset");
    }
    const auto idx = kernels::iota_indices(ds.size());
    return kernels::predict(backend, circuit, theta, ds.states, idx, obs);
}

void require_caro_readout(const Observable &obs) {
    if (obs.string != PauliString::single(obs.n_qubits(), 0, Pauli::Z) ||
        obs.spectral_norm != 1.0) {
        throw InvalidInput("the projector loss reads out Z on the first qubit with B_O = 1");
    }
}
} // namespace

double hinge_loss(std::span<const double> theta, const LabeledDataset &batch,
                  const CircuitSpec &circuit, const Observable &obs) {
    require_binary(batch.labels, "hinge loss");
    const auto p = predict_all(theta, batch, circuit, obs, kernels::Backend::OpenMP);
    return mean_of(p, batch.labels, point_loss(LossKind::Hinge));
}

double mse_loss(std::span<const double> theta, const LabeledDataset &batch,
                const CircuitSpec &circuit, const Observable &obs) {
    const auto p = predict_all(theta, batch, circuit, obs, kernels::Backend::OpenMP);
    return mean_of(p, batch.labels, point_loss(LossKind::MSE));
}

double caro_loss(std::span<const double> theta, const LabeledDataset &batch,
                 const CircuitSpec &circuit, ProjectorMapping mapping) {
    require_binary(batch.labels, "projector loss");
    const auto p = predict_all(theta, batch, circuit, Observable::z_first(circuit.n_qubits()),
                               kernels::Backend::OpenMP);
    return mean_of(p, batch.labels, point_loss(LossKind::Caro, mapping));
}

double evaluate_predictions(std::span<const double> predictions, std::span<const double> labels,
                            RiskKind kind, ProjectorMapping mapping) {
    if (predictions.empty()) {
        throw InvalidInput("cannot evaluate on an empty dataset");
    }
    if (predictions.size() != labels.size()) {
        throw InvalidInput("prediction/label count mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        s += risk(kind, predictions[i], labels[i], mapping);
    }
    return s / static_cast<double>(predictions.size());
}

double evaluate(std::span<const double> theta, const LabeledDataset &dataset,
                const CircuitSpec &circuit, const Observable &obs, RiskKind kind,
                ProjectorMapping mapping, kernels::Backend backend) {
    if (dataset.size() == 0) {
        throw InvalidInput("cannot evaluate on an empty dataset");
    }
    if (needs_binary(kind)) {
        require_binary(dataset.labels, to_string(kind));
    }
    const auto p = predict_all(theta, dataset, circuit, obs, backend);
    return evaluate_predictions(p, dataset.labels, kind, mapping);
}

OptimizerSpec OptimizerSpec::defaults(OptimizerKind kind, double learning_rate) {
    OptimizerSpec s;
    s.kind = kind;
    s.learning_rate = learning_rate;
    switch (kind) {
    case OptimizerKind::SGD:
        break;
    case OptimizerKind::Adam:
        s.beta1 = 0.9;
        s.beta2 = 0.999;
        s.epsilon = 1e-8;
        break;
    case OptimizerKind::RMSprop:
        s.decay = 0.99;
        s.epsilon = 1e-8;
        break;
    case OptimizerKind::AdaGrad:
        s.epsilon = 1e-10;
        break;
    case OptimizerKind::Lion:
        s.beta1 = 0.9;
        s.beta2 = 0.99;
        break;
    }
    return s;
}

OptimizerState::OptimizerState(OptimizerSpec s, std::size_t n_params)
    : spec(s), first(n_params, 0.0), second(n_params, 0.0) {
    if (!(s.learning_rate > 0.0)) {
        throw InvalidInput("learning rate must be positive");
    }
}

void step_inplace(OptimizerState &state, std::span<double> theta,
                  std::span<const double> gradient) {
    if (theta.size() != gradient.size() || state.first.size() != theta.size()) {
        throw InvalidInput("optimizer shape mismatch");
    }
    for (double g : gradient) {
        if (!std::isfinite(g)) {
            throw NumericError("non-finite gradient");
        }
    }
    const OptimizerSpec &s = state.spec;
    const double lr = s.learning_rate;
    ++state.step_count;
    const std::size_t n = theta.size();
    switch (s.kind) {
    case OptimizerKind::SGD:
        for (std::size_t i = 0; i < n; ++i) {
            theta[i] -= lr * gradient[i];
        }
        break;
    case OptimizerKind::Adam: {
        const auto t = static_cast<double>(state.step_count);
        const double c1 = 1.0 - std::pow(s.beta1, t);
        const double c2 = 1.0 - std::pow(s.beta2, t);
        for (std::size_t i = 0; i < n; ++i) {
            const double g = gradient[i];
            state.first[i] = s.beta1 * state.first[i] + (1.0 - s.beta1) * g;
            state.second[i] = s.beta2 * state.second[i] + (1.0 - s.beta2) * g * g;
            const double mh = state.first[i] / c1;
            const double vh = state.second[i] / c2;
            theta[i] -= lr * mh / (std::sqrt(vh) + s.epsilon);
        }
        break;
    }
    case OptimizerKind::RMSprop:
        for (std::size_t i = 0; i < n; ++i) {
            const double g = gradient[i];
            state.second[i] = s.decay * state.second[i] + (1.0 - s.decay) * g * g;
            theta[i] -= lr * g / (std::sqrt(state.second[i]) + s.epsilon);
        }
        break;
    case OptimizerKind::AdaGrad:
        for (std::size_t i = 0; i < n; ++i) {
            const double g = gradient[i];
            state.second[i] += g * g;
            theta[i] -= lr * g / (std::sqrt(state.second[i]) + s.epsilon);
        }
        break;
    case OptimizerKind::Lion:
        for (std::size_t i = 0; i < n; ++i) {
            const double g = gradient[i];
            const double c = s.beta1 * state.first[i] + (1.0 - s.beta1) * g;
            const double sgn = c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
            theta[i] -= lr * sgn;
            state.first[i] = s.beta2 * state.first[i] + (1.0 - s.beta2) * g;
        }
        break;
    }
}

std::pair<OptimizerState, std::vector<double>> step(OptimizerState state,
                                                    std::vector<double> theta,
                                                    std::span<const double> gradient) {
    step_inplace(state, theta, gradient);
    return {std::move(state), std::move(theta)};
}

std::vector<double> initial_parameters(std::size_t n_params, std::uint64_t seed) {
    return rng::standard_normal(n_params, rng::derive(seed, rng::kInitStream));
}

TrainHistory train(const TrainConfig &config, const LabeledDataset &dataset,
                   const CircuitSpec &circuit, const Observable &obs,
                   const LabeledDataset *test_set) {
    return train_from(config,
                      initial_parameters(static_cast<std::size_t>(circuit.n_params()), config.seed),
                      dataset, circuit, obs, test_set);
}

TrainHistory train_from(const TrainConfig &config, std::vector<double> theta,
                        const LabeledDataset &dataset, const CircuitSpec &circuit,
                        const Observable &obs, const LabeledDataset *test_set) {
    const std::size_t m = dataset.size();
    if (m == 0) {
        throw InvalidInput("cannot train on an empty dataset");
    }
    if (config.batch_size < 1 || config.epochs < 1) {
        throw InvalidInput("batch_size and epochs must be >= 1");
    }
    if (theta.size() != static_cast<std::size_t>(circuit.n_params())) {
        throw InvalidInput("initial parameter count does not match the circuit");
    }
    if (obs.n_qubits() != circuit.n_qubits()) {
        throw InvalidInput("observable and circuit qubit counts differ");
    }
    if (needs_binary(config.loss)) {
        require_binary(dataset.labels, to_string(config.loss));
    }
    if (needs_binary(config.risk)) {
        require_binary(dataset.labels, to_string(config.risk));
        if (test_set != nullptr) {
            require_binary(test_set->labels, to_string(config.risk));
        }
    }
    if (config.loss == LossKind::Caro) {
        require_caro_readout(obs);
    }

    const kernels::PointLoss loss = point_loss(config.loss, config.mapping);
    OptimizerState opt(config.optimizer, theta.size());
    TrainHistory history;
    history.records.reserve(static_cast<std::size_t>(config.epochs));

    std::vector<std::size_t> order(m);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t i = 0; i < m; ++i) {
            order[i] = i;
        }
        rng::Generator shuffler(
            rng::derive(config.seed, rng::kShuffleStream, static_cast<std::uint64_t>(epoch)));
        shuffler.shuffle(std::span<std::size_t>(order));

        double loss_sum = 0.0;
        double risk_sum = 0.0;
        for (std::size_t start = 0; start < m; start += config.batch_size) {
            const std::size_t stop = std::min(m, start + config.batch_size);
            const std::span<const std::size_t> idx(order.data() + start, stop - start);
            const kernels::BatchResult r = kernels::loss_and_gradient(
                config.backend, circuit, theta, {dataset.states, dataset.labels, idx}, obs, loss);
            if (!std::isfinite(r.mean_loss)) {
                throw NumericError("non-finite loss at epoch " + std::to_string(epoch));
            }
            step_inplace(opt, theta, r.gradient);
            loss_sum += r.mean_loss * static_cast<double>(idx.size());
            for (std::size_t k = 0; k < idx.size(); ++k) {
                risk_sum += risk(config.risk, r.predictions[k], dataset.labels[idx[k]],
                                 config.mapping);
            }
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.loss = loss_sum / static_cast<double>(m);
        rec.train_error = risk_sum / static_cast<double>(m);
        rec.test_error = std::numeric_limits<double>::quiet_NaN();
        if (config.exact_epoch_metrics) {
            const auto all = kernels::iota_indices(m);
            const auto p =
                kernels::predict(config.backend, circuit, theta, dataset.states, all, obs);
            rec.loss = mean_of(p, dataset.labels, loss);
            rec.train_error = evaluate_predictions(p, dataset.labels, config.risk, config.mapping);
            if (test_set != nullptr) {
                rec.test_error = evaluate(theta, *test_set, circuit, obs, config.risk,
                                          config.mapping, config.backend);
            }
        }
        history.records.push_back(rec);
    }
    history.theta = std::move(theta);
    return history;
}

} // namespace qgb
