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

#include "qgb/rademacher.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "qgb/errors.hpp"
#include "qgb/rng.hpp"
#include "qgb/training.hpp"

namespace qgb {

namespace {

// Loss -sigma * p: minimizing it maximizes the sigma correlation.
kernels::LossPoint negative_correlation(double prediction, double sigma) {
    return {-sigma * prediction, -sigma};
}

double ascend(const CircuitSpec &circuit, const kernels::Batch &batch, const Observable &obs,
              std::vector<double> theta, const RademacherOptions &opt) {
    const kernels::PointLoss loss = negative_correlation;
    const OptimizerSpec spec = OptimizerSpec::defaults(OptimizerKind::Adam, opt.learning_rate);
    OptimizerState state(spec, theta.size());
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s <= opt.ascent_steps; ++s) {
        const kernels::BatchResult r = kernels::serial::loss_and_gradient(circuit, theta, batch,
                                                                          obs, loss);
        best = std::max(best, -r.mean_loss);
        if (s == opt.ascent_steps || theta.empty()) {
            break;
        }
        step_inplace(state, theta, r.gradient);
    }
    return best;
}

double one_draw(std::span<const StateVector> states, const CircuitSpec &circuit,
                const Observable &obs, const RademacherOptions &opt,
                int draw) {
    const std::size_t m = states.size();
    rng::Generator g(rng::derive(opt.seed, rng::kSigmaStream, static_cast<std::uint64_t>(draw)));
    std::vector<double> sigma(m);
    for (auto &s : sigma) {
        s = g.sign();
    }
    const std::vector<std::size_t> idx = kernels::iota_indices(m);
    const kernels::Batch batch{states, sigma, idx};
    // Flipping every sigma is the same as flipping the readout sign.
    std::vector<double> flipped(m);
    std::transform(sigma.begin(), sigma.end(), flipped.begin(), [](double s) { return -s; });
    const kernels::Batch flipped_batch{states, flipped, idx};

    double best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < opt.restarts; ++r) {
        const std::uint64_t seed = rng::derive(opt.seed, rng::kRestartStream,
                                          static_cast<std::uint64_t>(draw) * 1024u +
                                              static_cast<std::uint64_t>(r));
        const std::vector<double> theta0 =
            rng::standard_normal(static_cast<std::size_t>(circuit.n_params()), seed);
        best = std::max(best, ascend(circuit, batch, obs, theta0, opt));
        if (opt.sign_closed) {
            best = std::max(best, ascend(circuit, flipped_batch, obs, theta0, opt));
        }
    }
    return best;
}

} // namespace

RademacherEstimate rademacher_estimate(std::span<const StateVector> states,
                                       const CircuitSpec &circuit, const Observable &obs,
                                       const RademacherOptions &options) {
    if (options.n_sigma < 1) {
        throw InvalidInput("n_sigma must be >= 1");
    }
    if (options.restarts < 1 || options.ascent_steps < 0) {
        throw InvalidInput("restarts must be >= 1 and ascent_steps >= 0");
    }
    if (states.empty()) {
        throw InvalidInput("Rademacher estimate needs a non-empty sample");
    }
    for (const auto &s : states) {
        if (s.n_qubits() != circuit.n_qubits()) {
            throw InvalidInput("sample state width does not match the circuit");
        }
    }
    RademacherEstimate out;
    out.per_draw.assign(static_cast<std::size_t>(options.n_sigma), 0.0);
    const int n = options.n_sigma;
    if (options.backend == kernels::Backend::OpenMP) {
        std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic, 1)
        for (int d = 0; d < n; ++d) {
            try {
                out.per_draw[static_cast<std::size_t>(d)] =
                    one_draw(states, circuit, obs, options, d);
            } catch (...) {
                failed.store(true);
            }
        }
        if (failed.load()) {
            throw NumericError("Rademacher ascent produced a non-finite gradient");
        }
    } else {
        for (int d = 0; d < n; ++d) {
            out.per_draw[static_cast<std::size_t>(d)] = one_draw(states, circuit, obs, options, d);
        }
    }

    double sum = 0.0;
    for (double v : out.per_draw) {
        sum += v;
    }
    out.estimate = sum / n;
    if (n > 1) {
        double ss = 0.0;
        for (double v : out.per_draw) {
            ss += (v - out.estimate) * (v - out.estimate);
        }
        out.std_error = std::sqrt(ss / (n - 1) / n);
    }
    return out;
}

} // namespace qgb
