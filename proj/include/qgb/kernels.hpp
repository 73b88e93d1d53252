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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qgb/circuit.hpp"
#include "qgb/pauli.hpp"
#include "qgb/state.hpp"

/**
 * @file
 * Statevector gate kernels and the sample-parallel batch kernels built on
 * them.
 *
 * Each batch kernel has a serial reference and an OpenMP variant. The
 * OpenMP variants compute per-sample results into private slots and reduce
 * them in ascending sample order, so both produce bit-identical output for
 * any thread count.
 */

namespace qgb::kernels {

// ---- single-state kernels (in place, no bounds checks) ----

/// exp(-i phi Z) on qubit q.
void rz(std::span<Complex> amps, int n_qubits, int q, double phi) noexcept;
/// exp(-i phi Y) on qubit q.
void ry(std::span<Complex> amps, int n_qubits, int q, double phi) noexcept;
void cnot(std::span<Complex> amps, int n_qubits, int control, int target) noexcept;
void hadamard(std::span<Complex> amps, int n_qubits, int q) noexcept;
/// Multiplies amplitudes of a 3-qubit window by exp(i * phases[k]), k = local index.
void diag3(std::span<Complex> amps, int n_qubits, int first, std::span<const double, 8> phases,
           double x) noexcept;
/// psi <- P psi for a Pauli action.
void apply_pauli(std::span<Complex> amps, const PauliAction &action) noexcept;
/// <bra| Z_q |ket>.
Complex braket_z(std::span<const Complex> bra, std::span<const Complex> ket, int n_qubits,
                 int q) noexcept;
/// <bra| Y_q |ket>.
Complex braket_y(std::span<const Complex> bra, std::span<const Complex> ket, int n_qubits,
                 int q) noexcept;

/// Dispatches one gate; the caller guarantees valid qubit indices.
void apply_unchecked(std::span<Complex> amps, int n_qubits, const Gate &gate,
                     double angle) noexcept;

// ---- batch kernels ----

struct LossPoint {
    double value = 0.0;
    /// d(loss)/d(prediction).
    double slope = 0.0;
};

/// Per-sample loss as a function of (prediction, label). Must not throw: it
/// runs inside parallel regions, so labels are validated before the call.
using PointLoss = std::function<LossPoint(double prediction, double label)>;

/// Samples addressed by index into a shared pool.
struct Batch {
    std::span<const StateVector> states;
    std::span<const double> labels;
    std::span<const std::size_t> indices;
};

struct BatchResult {
    double mean_loss = 0.0;
    std::vector<double> gradient;    // mean over the batch
    std::vector<double> predictions; // aligned with Batch::indices
};

namespace serial {
std::vector<double> predict(const CircuitSpec &circuit, std::span<const double> theta,
                            std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs);
BatchResult loss_and_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                              const Batch &batch, const Observable &obs, const PointLoss &loss);
} // namespace serial

namespace omp {
std::vector<double> predict(const CircuitSpec &circuit, std::span<const double> theta,
                            std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs);
BatchResult loss_and_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                              const Batch &batch, const Observable &obs, const PointLoss &loss);
} // namespace omp

enum class Backend { Serial, OpenMP };

std::vector<double> predict(Backend backend, const CircuitSpec &circuit,
                            std::span<const double> theta, std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs);
BatchResult loss_and_gradient(Backend backend, const CircuitSpec &circuit,
                              std::span<const double> theta, const Batch &batch,
                              const Observable &obs, const PointLoss &loss);

/// Sets the OpenMP worker count; n <= 0 leaves the runtime default.
void set_num_threads(int n);
int max_threads();

/// 0..n-1.
std::vector<std::size_t> iota_indices(std::size_t n);

} // namespace qgb::kernels
