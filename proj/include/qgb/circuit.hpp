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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgb/state.hpp"

namespace qgb {

enum class GateKind : std::uint8_t { RotY, RotZ, CNOT, DiagExp, Hadamard };

enum class Encoding : std::uint8_t { None, AngleRy, SpecialDiag };

std::string_view to_string(Encoding e) noexcept;
Encoding encoding_from_string(std::string_view s);

/// Sign s in exp(s * i * x * H) for DiagExp encoding gates.
enum class DiagSign : std::int8_t { Minus = -1, Plus = 1 };

/// Half-angle rotations exp(-i theta P / 2) are the trainable convention.
inline constexpr double kHalfAngle = 0.5;
/// Full-angle exp(-i x P) used by the angle encoding.
inline constexpr double kFullAngle = 1.0;

struct Gate {
    GateKind kind = GateKind::RotZ;
    /// Target first. CNOT: {control, target}. DiagExp: three consecutive qubits.
    std::array<int, 3> qubits{0, 0, 0};
    /// Index into the parameter vector, or kFixed for data-bound gates.
    int param_slot = kFixed;
    double fixed_value = 0.0;
    /// Rotation generator scale s in exp(-i s theta P).
    double generator_scale = kHalfAngle;
    /// DiagExp: exp(-i x diag) eigenphases, already multiplied by the sign.
    std::array<double, 8> diag{};

    static constexpr int kFixed = -1;

    [[nodiscard]] bool trainable() const noexcept { return param_slot != kFixed; }
    [[nodiscard]] int arity() const noexcept;

    static Gate rot_y(int q, int slot);
    static Gate rot_z(int q, int slot);
    static Gate cnot(int control, int target);
    static Gate hadamard(int q);
    /// exp(-i x Y), a data gate.
    static Gate angle_ry(int q, double x);
    /// Window on (first, first+1, first+2); diag entries k*(feature+2), k = 1..8,
    /// where `feature` is the 1-based feature index.
    static Gate diag_exp(int first, int feature, double x, DiagSign sign = DiagSign::Minus);
};

/**
 * A parameterized circuit: gate list plus its parameter count.
 *
 * The layered builder produces, per layer, Rz Ry Rz on each qubit followed
 * by ring CNOTs (q, q+1) for q < N-1 and (N-1, 0).
 */
class CircuitSpec {
  public:
    CircuitSpec() = default;

    /// Throws InvalidInput on bad qubit indices or slot numbers.
    CircuitSpec(int n_qubits, std::vector<Gate> gates, int n_params,
                Encoding encoding = Encoding::None, int layers = 0);

    static CircuitSpec layered(int n_qubits, int layers, Encoding encoding = Encoding::None);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] int n_params() const noexcept { return n_params_; }
    [[nodiscard]] int layers() const noexcept { return layers_; }
    [[nodiscard]] Encoding encoding() const noexcept { return encoding_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
    /// Number of trainable gates (the "parameterized gate count" of the bounds).
    [[nodiscard]] int trainable_gate_count() const noexcept;

  private:
    int n_qubits_ = 0;
    int n_params_ = 0;
    int layers_ = 0;
    Encoding encoding_ = Encoding::None;
    std::vector<Gate> gates_;
};

/// Qubits required to encode `dim` features with the given encoding.
int qubits_for_encoding(Encoding e, int dim);

/// Data-dependent prefix gates for a feature vector.
std::vector<Gate> encoding_gates(Encoding e, std::span<const double> features, int n_qubits,
                                 DiagSign sign = DiagSign::Minus);

/// Applies the encoding prefix to |0...0>.
StateVector encode_features(Encoding e, std::span<const double> features, int n_qubits,
                            DiagSign sign = DiagSign::Minus);

} // namespace qgb
