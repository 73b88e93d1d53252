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
#include <string>
#include <vector>

#include "qgb/circuit.hpp"
#include "qgb/rng.hpp"

/**
 * @file
 * Self-checks exposed through the CLI. Each compares two independent routes
 * to the same quantity on random instances and reports the worst deviation.
 */

namespace qgb::checks {

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    int cases = 0;

    [[nodiscard]] bool passed() const noexcept { return max_error <= tolerance; }
};

/// Random circuit with `layers` blocks of random rotations, Hadamards and
/// CNOTs on n_qubits qubits. Every rotation is trainable.
CircuitSpec random_circuit(int n_qubits, int layers, rng::Generator &gen);

/// Haar-ish random pure state (normalized complex Gaussian amplitudes).
StateVector random_state(int n_qubits, rng::Generator &gen);

/// PTM orthogonality, statevector vs Pauli-vector expectations, purity.
std::vector<CheckResult> check_ptm(int n_circuits, int n_cases, std::uint64_t seed);

/// Adjoint vs parameter shift and vs central finite differences.
std::vector<CheckResult> check_gradients(int n_instances, std::uint64_t seed);

/// Serial vs OpenMP batch kernels; tolerance 0 (bitwise equality).
std::vector<CheckResult> check_backends(int n_instances, std::uint64_t seed);

} // namespace qgb::checks
