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

#include "qgb/circuit.hpp"

#include <string>

#include "qgb/errors.hpp"
#include "qgb/simulator.hpp"

namespace qgb {

std::string_view to_string(Encoding e) noexcept {
    switch (e) {
    case Encoding::None:
        return "none";
    case Encoding::AngleRy:
        return "angle";
    case Encoding::SpecialDiag:
        return "special";
    }
    return "?";
}

Encoding encoding_from_string(std::string_view s) {
    if (s == "none") {
        return Encoding::None;
    }
    if (s == "angle" || s == "angle_ry" || s == "AngleRy") {
        return Encoding::AngleRy;
    }
    if (s == "special" || s == "special_diag" || s == "SpecialDiag") {
        return Encoding::SpecialDiag;
    }
    throw InvalidInput("unknown encoding '" + std::string(s) + "'");
}

int Gate::arity() const noexcept {
    switch (kind) {
    case GateKind::CNOT:
        return 2;
    case GateKind::DiagExp:
        return 3;
    default:
        return 1;
    }
}

Gate Gate::rot_y(int q, int slot) {
    Gate g;
    g.kind = GateKind::RotY;
    g.qubits = {q, 0, 0};
    g.param_slot = slot;
    return g;
}

Gate Gate::rot_z(int q, int slot) {
    Gate g;
    g.kind = GateKind::RotZ;
    g.qubits = {q, 0, 0};
    g.param_slot = slot;
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.qubits = {control, target, 0};
    return g;
}

Gate Gate::hadamard(int q) {
    Gate g;
    g.kind = GateKind::Hadamard;
    g.qubits = {q, 0, 0};
    return g;
}

Gate Gate::angle_ry(int q, double x) {
    Gate g = rot_y(q, kFixed);
    g.fixed_value = x;
    g.generator_scale = kFullAngle;
    return g;
}

Gate Gate::diag_exp(int first, int feature, double x, DiagSign sign) {
    Gate g;
    g.kind = GateKind::DiagExp;
    g.qubits = {first, first + 1, first + 2};
    g.fixed_value = x;
    g.generator_scale = kFullAngle;
    const double s = static_cast<double>(static_cast<int>(sign));
    for (int k = 0; k < 8; ++k) {
        g.diag[static_cast<std::size_t>(k)] = s * static_cast<double>((k + 1) * (feature + 2));
    }
    return g;
}

CircuitSpec::CircuitSpec(int n_qubits, std::vector<Gate> gates, int n_params, Encoding encoding,
                         int layers)
    : n_qubits_(n_qubits), n_params_(n_params), layers_(layers), encoding_(encoding),
      gates_(std::move(gates)) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
        throw CapacityError("circuit qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(kMaxStateQubits) + "]");
    }
    if (n_params < 0) {
        throw InvalidInput("negative parameter count");
    }
    for (const Gate &g : gates_) {
        for (int k = 0; k < g.arity(); ++k) {
            const int q = g.qubits[static_cast<std::size_t>(k)];
            if (q < 0 || q >= n_qubits) {
                throw InvalidInput("gate qubit index " + std::to_string(q) + " out of range");
            }
        }
        if (g.kind == GateKind::CNOT && g.qubits[0] == g.qubits[1]) {
            throw InvalidInput("CNOT control equals target");
        }
        if (g.trainable()) {
            if (g.kind != GateKind::RotY && g.kind != GateKind::RotZ) {
                throw InvalidInput("only rotations can be trainable");
            }
            if (g.param_slot >= n_params) {
                throw InvalidInput("gate parameter slot out of range");
            }
        }
    }
}

CircuitSpec CircuitSpec::layered(int n_qubits, int layers, Encoding encoding) {
    if (layers < 0) {
        throw InvalidInput("negative layer count");
    }
    std::vector<Gate> gates;
    int slot = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n_qubits; ++q) {
            gates.push_back(Gate::rot_z(q, slot++));
            gates.push_back(Gate::rot_y(q, slot++));
            gates.push_back(Gate::rot_z(q, slot++));
        }
        if (n_qubits >= 2) {
            for (int q = 0; q + 1 < n_qubits; ++q) {
                gates.push_back(Gate::cnot(q, q + 1));
            }
            gates.push_back(Gate::cnot(n_qubits - 1, 0));
        }
    }
    return {n_qubits, std::move(gates), slot, encoding, layers};
}

int CircuitSpec::trainable_gate_count() const noexcept {
    int c = 0;
    for (const Gate &g : gates_) {
        c += g.trainable() ? 1 : 0;
    }
    return c;
}

int qubits_for_encoding(Encoding e, int dim) {
    if (dim < 1) {
        throw InvalidInput("feature dimension must be >= 1");
    }
    switch (e) {
    case Encoding::AngleRy:
        return dim;
    case Encoding::SpecialDiag:
        return dim + 2;
    case Encoding::None:
        break;
    }
    throw InvalidInput("encoding 'none' carries no features");
}

std::vector<Gate> encoding_gates(Encoding e, std::span<const double> features, int n_qubits,
                                 DiagSign sign) {
    const int d = static_cast<int>(features.size());
    if (qubits_for_encoding(e, d) != n_qubits) {
        throw InvalidInput(std::string(to_string(e)) + " encoding of " + std::to_string(d) +
                           " features needs " + std::to_string(qubits_for_encoding(e, d)) +
                           " qubits, got " + std::to_string(n_qubits));
    }
    std::vector<Gate> gates;
    if (e == Encoding::AngleRy) {
        for (int q = 0; q < d; ++q) {
            gates.push_back(Gate::angle_ry(q, features[static_cast<std::size_t>(q)]));
        }
    } else {
        // A diagonal generator acting on |0...0> only adds a global phase, so
        // the register is first put in uniform superposition.
        for (int q = 0; q < n_qubits; ++q) {
            gates.push_back(Gate::hadamard(q));
        }
        for (int i = 0; i < d; ++i) {
            gates.push_back(Gate::diag_exp(i, i + 1, features[static_cast<std::size_t>(i)], sign));
        }
    }
    return gates;
}

StateVector encode_features(Encoding e, std::span<const double> features, int n_qubits,
                            DiagSign sign) {
    StateVector s = StateVector::zero(n_qubits);
    for (const Gate &g : encoding_gates(e, features, n_qubits, sign)) {
        apply_gate_inplace(s, g, g.fixed_value);
    }
    return s;
}

} // namespace qgb
