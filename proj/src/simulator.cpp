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

#include "qgb/simulator.hpp"

#include <numbers>
#include <string>

#include "qgb/errors.hpp"
#include "qgb/kernels.hpp"

namespace qgb {

namespace {

void check_gate(const Gate &gate, int n_qubits) {
    for (int k = 0; k < gate.arity(); ++k) {
        const int q = gate.qubits[static_cast<std::size_t>(k)];
        if (q < 0 || q >= n_qubits) {
            throw InvalidInput("gate qubit index " + std::to_string(q) + " out of range for " +
                               std::to_string(n_qubits) + " qubits");
        }
    }
    if (gate.kind == GateKind::CNOT && gate.qubits[0] == gate.qubits[1]) {
        throw InvalidInput("CNOT control equals target");
    }
}

void check_run(const CircuitSpec &circuit, std::span<const double> theta,
               const StateVector &input) {
    if (theta.size() != static_cast<std::size_t>(circuit.n_params())) {
        throw InvalidInput("parameter vector has " + std::to_string(theta.size()) +
                           " entries, circuit expects " + std::to_string(circuit.n_params()));
    }
    if (input.n_qubits() != circuit.n_qubits()) {
        throw InvalidInput("input state qubit count does not match the circuit");
    }
}

void forward(std::span<Complex> amps, const CircuitSpec &circuit, std::span<const double> theta,
             std::ptrdiff_t shifted_gate = -1, double shift = 0.0) {
    const int n = circuit.n_qubits();
    const auto gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        double angle = gate_angle(gates[k], theta);
        if (static_cast<std::ptrdiff_t>(k) == shifted_gate) {
            angle += shift;
        }
        kernels::apply_unchecked(amps, n, gates[k], angle);
    }
}

} // namespace

void apply_gate_inplace(StateVector &state, const Gate &gate, double angle) {
    check_gate(gate, state.n_qubits());
    kernels::apply_unchecked(state.amplitudes(), state.n_qubits(), gate, angle);
}

StateVector apply_gate(StateVector state, const Gate &gate, double angle) {
    apply_gate_inplace(state, gate, angle);
    return state;
}

StateVector run_circuit(const CircuitSpec &circuit, std::span<const double> theta,
                        StateVector input) {
    check_run(circuit, theta, input);
    forward(input.amplitudes(), circuit, theta);
    return input;
}

double expectation(const StateVector &state, const Observable &obs) {
    if (state.n_qubits() != obs.n_qubits()) {
        throw InvalidInput("observable and state qubit counts differ");
    }
    return obs.spectral_norm * pauli_expectation(state.amplitudes(), PauliAction::of(obs.string));
}

Eigen::MatrixXcd circuit_unitary(const CircuitSpec &circuit, std::span<const double> theta) {
    const int n = circuit.n_qubits();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        const StateVector col =
            run_circuit(circuit, theta, StateVector::basis(n, static_cast<std::size_t>(c)));
        for (Eigen::Index r = 0; r < dim; ++r) {
            u(r, c) = col[static_cast<std::size_t>(r)];
        }
    }
    return u;
}

ValueAndGradient adjoint_value_and_gradient(const CircuitSpec &circuit,
                                            std::span<const double> theta,
                                            const StateVector &input, const Observable &obs) {
    check_run(circuit, theta, input);
    if (obs.n_qubits() != circuit.n_qubits()) {
        throw InvalidInput("observable and circuit qubit counts differ");
    }
    const int n = circuit.n_qubits();
    const auto gates = circuit.gates();

    std::vector<Complex> phi(input.amplitudes().begin(), input.amplitudes().end());
    forward(phi, circuit, theta);

    const PauliAction action = PauliAction::of(obs.string);
    ValueAndGradient out;
    out.value = obs.spectral_norm * pauli_expectation(phi, action);
    out.gradient.assign(static_cast<std::size_t>(circuit.n_params()), 0.0);

    std::vector<Complex> lambda = phi;
    kernels::apply_pauli(lambda, action);

    // Reverse sweep: phi is the state right after gate k, lambda the
    // observable-weighted costate at the same point.
    for (std::size_t k = gates.size(); k-- > 0;) {
        const Gate &g = gates[k];
        const double angle = gate_angle(g, theta);
        if (g.trainable()) {
            const int q = g.qubits[0];
            const Complex z = g.kind == GateKind::RotY ? kernels::braket_y(lambda, phi, n, q)
                                                       : kernels::braket_z(lambda, phi, n, q);
            out.gradient[static_cast<std::size_t>(g.param_slot)] +=
                2.0 * g.generator_scale * obs.spectral_norm * z.imag();
        }
        if (k > 0) {
            kernels::apply_unchecked(phi, n, g, -angle);
            kernels::apply_unchecked(lambda, n, g, -angle);
        }
    }
    return out;
}

std::vector<double> adjoint_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                                     const StateVector &input, const Observable &obs) {
    return adjoint_value_and_gradient(circuit, theta, input, obs).gradient;
}

std::vector<double> parameter_shift_gradient(const CircuitSpec &circuit,
                                             std::span<const double> theta,
                                             const StateVector &input, const Observable &obs) {
    check_run(circuit, theta, input);
    const auto gates = circuit.gates();
    for (const Gate &g : gates) {
        if (g.trainable() && g.generator_scale != kHalfAngle) {
            throw InvalidInput("parameter-shift rule needs half-angle generators; "
                               "full-angle gates are data encodings, not trainable slots");
        }
    }
    const PauliAction action = PauliAction::of(obs.string);
    auto shifted = [&](std::size_t k, double shift) {
        std::vector<Complex> psi(input.amplitudes().begin(), input.amplitudes().end());
        forward(psi, circuit, theta, static_cast<std::ptrdiff_t>(k), shift);
        return obs.spectral_norm * pauli_expectation(psi, action);
    };
    std::vector<double> grad(static_cast<std::size_t>(circuit.n_params()), 0.0);
    constexpr double kShift = std::numbers::pi / 2.0;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (gates[k].trainable()) {
            grad[static_cast<std::size_t>(gates[k].param_slot)] +=
                0.5 * (shifted(k, kShift) - shifted(k, -kShift));
        }
    }
    return grad;
}

} // namespace qgb
