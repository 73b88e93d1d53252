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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qgb/state.hpp"

namespace qgb {

class CircuitSpec;

/// Single-qubit Pauli letter. The numeric value is its digit in the basis order.
enum class Pauli : std::uint8_t { I = 0, Z = 1, X = 2, Y = 3 };

char to_char(Pauli p) noexcept;
Pauli pauli_from_char(char c);

/**
 * Tensor product of Pauli letters, qubit 0 first.
 *
 * basis_index() is the position in the lexicographic expansion of
 * {I,Z,X,Y}^{(x)N} with qubit 0 as the most significant base-4 digit.
 */
struct PauliString {
    std::vector<Pauli> codes;
    double coefficient = 1.0;

    /// Parses "XYZ", "ZII", ... Throws InvalidInput on an empty string or
    /// an unknown letter.
    static PauliString parse(std::string_view text, double coefficient = 1.0);
    static PauliString from_index(std::size_t index, int n_qubits);
    /// Z on one qubit, identity elsewhere.
    static PauliString single(int n_qubits, int qubit, Pauli p);

    [[nodiscard]] int n_qubits() const noexcept { return static_cast<int>(codes.size()); }
    [[nodiscard]] std::size_t basis_index() const noexcept;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// Real coefficient vector over the 4^N Pauli basis (alpha for states, m for observables).
struct PauliCoeffVector {
    int n_qubits = 0;
    std::vector<double> entries;

    [[nodiscard]] std::size_t dim() const noexcept { return entries.size(); }
    [[nodiscard]] double squared_norm() const noexcept;
};

/// Real 4^N x 4^N Pauli transfer matrix of a unitary circuit.
struct TransferMatrix {
    int n_qubits = 0;
    Eigen::MatrixXd entries;

    /// max |T^T T - I|.
    [[nodiscard]] double orthogonality_defect() const;
    [[nodiscard]] PauliCoeffVector apply(const PauliCoeffVector &alpha) const;
};

/// O = B_O * P for a single Pauli string P.
struct Observable {
    PauliString string;
    double spectral_norm = 1.0;

    Observable() = default;
    /// Throws InvalidInput unless B_O is finite and positive and the string
    /// has unit coefficient.
    Observable(PauliString s, double b_o);

    [[nodiscard]] int n_qubits() const noexcept { return string.n_qubits(); }

    /// Z on the first qubit.
    static Observable z_first(int n_qubits, double b_o = 1.0);
    /// Z on every qubit.
    static Observable z_all(int n_qubits, double b_o = 1.0);
};

/// Default dense caps. The PTM is 4^N x 4^N; the coefficient vector alone is 4^N.
inline constexpr int kDefaultTransferMatrixCap = 6;
inline constexpr int kMaxPauliVectorQubits = 10;

/// 4^N.
constexpr std::size_t pauli_dim(int n_qubits) noexcept {
    return std::size_t{1} << (2 * n_qubits);
}

/**
 * Action of a Pauli string on a computational basis state:
 * P|b> = phase(b) |b ^ flip>. Precomputed masks make this O(1) per index.
 */
struct PauliAction {
    std::size_t flip = 0;    // X or Y positions
    std::size_t sign = 0;    // Z or Y positions: (-1)^popcount(b & sign)
    int y_count = 0;         // global factor i^y_count

    static PauliAction of(const PauliString &p);
    [[nodiscard]] Complex phase(std::size_t b) const noexcept;
};

/// <psi|P|psi>, real because P is Hermitian.
double pauli_expectation(std::span<const Complex> psi, const PauliAction &action) noexcept;

/// alpha_i = Tr[rho P_i] for rho = |psi><psi|. Requires a normalized state.
PauliCoeffVector state_to_pauli_vector(const StateVector &state);

/// alpha_i = Tr[rho P_i] for a dense density matrix.
PauliCoeffVector density_to_pauli_vector(const Eigen::MatrixXcd &rho);

/// One-hot vector at obs.string.basis_index().
PauliCoeffVector observable_vector(const Observable &obs);

/// B_O * m^T alpha. m must be one-hot of the same length as alpha.
double expectation_from_pauli(const PauliCoeffVector &m, const PauliCoeffVector &alpha,
                              double b_o);

/// T_ij = 2^-N Tr[P_i U P_j U^dagger]. Throws CapacityError above `max_qubits`.
TransferMatrix transfer_matrix(const CircuitSpec &circuit, std::span<const double> theta,
                               int max_qubits = kDefaultTransferMatrixCap);

/// Same, for an explicit dense unitary.
TransferMatrix transfer_matrix(const Eigen::MatrixXcd &unitary,
                               int max_qubits = kDefaultTransferMatrixCap);

/// w = T^T m.
PauliCoeffVector model_weight_vector(const TransferMatrix &t, const PauliCoeffVector &m);

/// ||alpha||^2 / 2^N = Tr[rho^2].
double purity(const PauliCoeffVector &alpha);

} // namespace qgb
