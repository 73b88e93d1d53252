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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qgb {

using Complex = std::complex<double>;

/// Hard cap on statevector size; 2^12 amplitudes is the largest circuit used.
inline constexpr int kMaxStateQubits = 12;

/**
 * Pure N-qubit state as 2^N complex amplitudes.
 *
 * Qubit 0 is the most significant bit of the basis index, so the basis
 * label |q0 q1 ... q_{N-1}> reads left to right like the Pauli strings.
 */
class StateVector {
  public:
    StateVector() = default;

    /// |0...0>.
    static StateVector zero(int n_qubits);
    static StateVector basis(int n_qubits, std::size_t index);
    /// Takes ownership of amplitudes; throws InvalidInput unless the length
    /// is a power of two. No normalization is applied.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex &operator[](std::size_t i) noexcept { return amps_[i]; }
    const Complex &operator[](std::size_t i) const noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] bool is_normalized(double tol = 1e-12) const noexcept;
    void normalize();

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    StateVector(int n, std::vector<Complex> amps) : n_qubits_(n), amps_(std::move(amps)) {}

    int n_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// <a|b>.
Complex inner(std::span<const Complex> a, std::span<const Complex> b) noexcept;

/// Bit mask of qubit q in the basis index of an n-qubit register.
constexpr std::size_t qubit_mask(int n_qubits, int q) noexcept {
    return std::size_t{1} << (n_qubits - 1 - q);
}

} // namespace qgb
