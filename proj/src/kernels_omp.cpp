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

#include <algorithm>
#include <cstdint>

#include "qgb/kernels.hpp"
#include "qgb/simulator.hpp"

namespace qgb::kernels::omp {

std::vector<double> predict(const CircuitSpec &circuit, std::span<const double> theta,
                            std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs) {
    const auto n = static_cast<std::int64_t>(indices.size());
    std::vector<double> out(indices.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        out[kk] = expectation(run_circuit(circuit, theta, states[indices[kk]]), obs);
    }
    return out;
}

BatchResult loss_and_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                              const Batch &batch, const Observable &obs, const PointLoss &loss) {
    const std::size_t n = batch.indices.size();
    const auto n_params = static_cast<std::size_t>(circuit.n_params());
    // One slot per sample; the reduction below runs in sample order.
    std::vector<double> per_sample(n * n_params);
    std::vector<LossPoint> points(n);
    std::vector<double> preds(n);

#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const std::size_t m = batch.indices[kk];
        const ValueAndGradient vg =
            adjoint_value_and_gradient(circuit, theta, batch.states[m], obs);
        preds[kk] = vg.value;
        points[kk] = loss(vg.value, batch.labels[m]);
        std::copy(vg.gradient.begin(), vg.gradient.end(),
                  per_sample.begin() + static_cast<std::ptrdiff_t>(kk * n_params));
    }

    BatchResult r;
    r.gradient.assign(n_params, 0.0);
    r.predictions = std::move(preds);
    double loss_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        loss_sum += points[k].value;
        const double *g = per_sample.data() + k * n_params;
        for (std::size_t p = 0; p < n_params; ++p) {
            r.gradient[p] += points[k].slope * g[p];
        }
    }
    const double inv = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
    r.mean_loss = loss_sum * inv;
    for (double &g : r.gradient) {
        g *= inv;
    }
    return r;
}

} // namespace qgb::kernels::omp
