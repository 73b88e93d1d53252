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

// Serial reference vs OpenMP kernels on one training batch.
// Arguments: {n_qubits, batch size}.

#include <benchmark/benchmark.h>

#include "qgb/datasets.hpp"
#include "qgb/kernels.hpp"
#include "qgb/training.hpp"

namespace {

using namespace qgb;

struct Fixture {
    CircuitSpec circuit;
    Observable obs;
    LabeledDataset data;
    std::vector<double> theta;
    std::vector<std::size_t> indices;
    kernels::PointLoss loss = point_loss(LossKind::Hinge);

    Fixture(int n, std::size_t m)
        : circuit(CircuitSpec::layered(n, 20)), obs(Observable::z_first(n)),
          data(sample_annni_dataset(m, n, {}, 1)),
          theta(initial_parameters(static_cast<std::size_t>(circuit.n_params()), 2)),
          indices(kernels::iota_indices(m)) {}

    kernels::Batch batch() const { return {data.states, data.labels, indices}; }
};

template <bool Parallel> void loss_and_gradient(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::omp::loss_and_gradient(f.circuit, f.theta, f.batch(), f.obs, f.loss)
                          : kernels::serial::loss_and_gradient(f.circuit, f.theta, f.batch(), f.obs, f.loss);
        benchmark::DoNotOptimize(r.mean_loss);
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel> void predict(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        auto p = Parallel ? kernels::omp::predict(f.circuit, f.theta, f.data.states, f.indices, f.obs)
                          : kernels::serial::predict(f.circuit, f.theta, f.data.states, f.indices, f.obs);
        benchmark::DoNotOptimize(p.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void shapes(benchmark::internal::Benchmark *b) {
    b->Args({6, 200})->Args({8, 200})->Args({10, 64})->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK(loss_and_gradient<false>)->Name("loss_and_gradient/serial")->Apply(shapes);
BENCHMARK(loss_and_gradient<true>)->Name("loss_and_gradient/omp")->Apply(shapes);
BENCHMARK(predict<false>)->Name("predict/serial")->Apply(shapes);
BENCHMARK(predict<true>)->Name("predict/omp")->Apply(shapes);

} // namespace

BENCHMARK_MAIN();
