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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qgb/circuit.hpp"
#include "qgb/pauli.hpp"
#include "qgb/state.hpp"

namespace qgb {

/// In-place U|psi>. `angle` is the parameter value for rotation gates (ignored otherwise).
void apply_gate_inplace(StateVector &state, const Gate &gate, double angle);

/// Value-returning form. Throws InvalidInput on out-of-range qubits.
StateVector apply_gate(StateVector state, const Gate &gate, double angle);

/// Angle used by `gate` under parameters theta.
inline double gate_angle(const Gate &gate, std::span<const double> theta) noexcept {
    return gate.trainable() ? theta[static_cast<std::size_t>(gate.param_slot)] : gate.fixed_value;
}

/// Applies every gate of the circuit in order. Throws InvalidInput on a
/// parameter-count or qubit-count mismatch.
StateVector run_circuit(const CircuitSpec &circuit, std::span<const double> theta,
                        StateVector input);

/// B_O <psi|P|psi>.
double expectation(const StateVector &state, const Observable &obs);

/// Dense 2^N x 2^N unitary of the circuit, built column by column.
Eigen::MatrixXcd circuit_unitary(const CircuitSpec &circuit, std::span<const double> theta);

struct ValueAndGradient {
    double value = 0.0;
    std::vector<double> gradient;
};

/**
 * Expectation and its exact gradient by one forward pass and one reverse
 * sweep (adjoint method). Works for any generator scale.
 */
ValueAndGradient adjoint_value_and_gradient(const CircuitSpec &circuit,
                                            std::span<const double> theta,
                                            const StateVector &input, const Observable &obs);

std::vector<double> adjoint_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                                     const StateVector &input, const Observable &obs);

/// [E(theta_k + pi/2) - E(theta_k - pi/2)] / 2 per trainable gate. Throws
/// InvalidInput if any trainable gate is not half-angle.
std::vector<double> parameter_shift_gradient(const CircuitSpec &circuit,
                                             std::span<const double> theta,
                                             const StateVector &input, const Observable &obs);

} // namespace qgb
