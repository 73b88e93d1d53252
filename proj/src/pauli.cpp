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

#include "qgb/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qgb/errors.hpp"
#include "qgb/simulator.hpp"

namespace qgb {

char to_char(Pauli p) noexcept {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::Z:
        return 'Z';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
    case '_':
        return Pauli::I;
    case 'Z':
        return Pauli::Z;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    default:
        throw InvalidInput(std::string("unknown Pauli letter '") + c + "'");
    }
}

PauliString PauliString::parse(std::string_view text, double coefficient) {
    if (text.empty()) {
        throw InvalidInput("empty Pauli string");
    }
    PauliString p;
    p.coefficient = coefficient;
    p.codes.reserve(text.size());
    for (char c : text) {
        p.codes.push_back(pauli_from_char(c));
    }
    return p;
}

PauliString PauliString::from_index(std::size_t index, int n_qubits) {
    if (n_qubits < 1 || index >= pauli_dim(n_qubits)) {
        throw InvalidInput("Pauli basis index out of range");
    }
    PauliString p;
    p.codes.resize(static_cast<std::size_t>(n_qubits));
    for (int q = n_qubits - 1; q >= 0; --q) {
        p.codes[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3U);
        index >>= 2;
    }
    return p;
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw InvalidInput("qubit index out of range");
    }
    PauliString s;
    s.codes.assign(static_cast<std::size_t>(n_qubits), Pauli::I);
    s.codes[static_cast<std::size_t>(qubit)] = p;
    return s;
}

std::size_t PauliString::basis_index() const noexcept {
    std::size_t idx = 0;
    for (Pauli p : codes) {
        idx = (idx << 2) | static_cast<std::size_t>(p);
    }
    return idx;
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(codes.size());
    for (Pauli p : codes) {
        s.push_back(to_char(p));
    }
    return s;
}

double PauliCoeffVector::squared_norm() const noexcept {
    double s = 0.0;
    for (double v : entries) {
        s += v * v;
    }
    return s;
}

double TransferMatrix::orthogonality_defect() const {
    const Eigen::MatrixXd d =
        entries.transpose() * entries - Eigen::MatrixXd::Identity(entries.rows(), entries.cols());
    return d.cwiseAbs().maxCoeff();
}

PauliCoeffVector TransferMatrix::apply(const PauliCoeffVector &alpha) const {
    if (alpha.dim() != static_cast<std::size_t>(entries.cols())) {
        throw InvalidInput("transfer matrix / coefficient vector dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> a(alpha.entries.data(),
                                              static_cast<Eigen::Index>(alpha.dim()));
    const Eigen::VectorXd b = entries * a;
    return {n_qubits, std::vector<double>(b.data(), b.data() + b.size())};
}

Observable::Observable(PauliString s, double b_o) : string(std::move(s)), spectral_norm(b_o) {
    if (!(b_o > 0.0) || !std::isfinite(b_o)) {
        throw InvalidInput("observable spectral norm must be finite and positive");
    }
    if (string.codes.empty()) {
        throw InvalidInput("observable needs at least one qubit");
    }
    if (string.coefficient != 1.0) {
        throw InvalidInput("observable Pauli string must carry unit coefficient; scale via B_O");
    }
}

Observable Observable::z_first(int n_qubits, double b_o) {
    return {PauliString::single(n_qubits, 0, Pauli::Z), b_o};
}

Observable Observable::z_all(int n_qubits, double b_o) {
    PauliString s;
    s.codes.assign(static_cast<std::size_t>(n_qubits), Pauli::Z);
    return {std::move(s), b_o};
}

PauliAction PauliAction::of(const PauliString &p) {
    PauliAction a;
    const int n = p.n_qubits();
    for (int q = 0; q < n; ++q) {
        const std::size_t m = qubit_mask(n, q);
        switch (p.codes[static_cast<std::size_t>(q)]) {
        case Pauli::I:
            break;
        case Pauli::Z:
            a.sign |= m;
            break;
        case Pauli::X:
            a.flip |= m;
            break;
        case Pauli::Y:
            a.flip |= m;
            a.sign |= m;
            ++a.y_count;
            break;
        }
    }
    return a;
}

Complex PauliAction::phase(std::size_t b) const noexcept {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double s = (std::popcount(b & sign) & 1) != 0 ? -1.0 : 1.0;
    return s * kIPow[y_count & 3];
}

double pauli_expectation(std::span<const Complex> psi, const PauliAction &action) noexcept {
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < psi.size(); ++b) {
        acc += std::conj(psi[b ^ action.flip]) * action.phase(b) * psi[b];
    }
    return acc.real();
}

PauliCoeffVector state_to_pauli_vector(const StateVector &state) {
    const int n = state.n_qubits();
    if (n > kMaxPauliVectorQubits) {
        throw CapacityError("Pauli coefficient vector capped at " +
                            std::to_string(kMaxPauliVectorQubits) + " qubits");
    }
    if (!state.is_normalized(1e-12)) {
        throw InvalidInput("state must be normalized");
    }
    PauliCoeffVector out{n, std::vector<double>(pauli_dim(n))};
    for (std::size_t i = 0; i < out.dim(); ++i) {
        out.entries[i] = pauli_expectation(state.amplitudes(),
                                           PauliAction::of(PauliString::from_index(i, n)));
    }
    return out;
}

namespace {
/// Tr[P A] = sum_c phase(c) A[c, c ^ flip].
Complex pauli_trace(const PauliAction &p, const Eigen::MatrixXcd &a) {
    Complex s{0.0, 0.0};
    const auto dim = static_cast<std::size_t>(a.rows());
    for (std::size_t c = 0; c < dim; ++c) {
        s += p.phase(c) * a(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ p.flip));
    }
    return s;
}

int qubits_of_dim(Eigen::Index dim) {
    const auto d = static_cast<std::size_t>(dim);
    if (d < 2 || !std::has_single_bit(d)) {
        throw InvalidInput("matrix dimension is not a power of two");
    }
    return std::countr_zero(d);
}
} // namespace

PauliCoeffVector density_to_pauli_vector(const Eigen::MatrixXcd &rho) {
    if (rho.rows() != rho.cols()) {
        throw InvalidInput("density matrix must be square");
    }
    const int n = qubits_of_dim(rho.rows());
    if (n > kMaxPauliVectorQubits) {
        throw CapacityError("Pauli coefficient vector qubit cap exceeded");
    }
    PauliCoeffVector out{n, std::vector<double>(pauli_dim(n))};
    for (std::size_t i = 0; i < out.dim(); ++i) {
        out.entries[i] = pauli_trace(PauliAction::of(PauliString::from_index(i, n)), rho).real();
    }
    return out;
}

PauliCoeffVector observable_vector(const Observable &obs) {
    const int n = obs.n_qubits();
    if (n > kMaxPauliVectorQubits) {
        throw CapacityError("Pauli coefficient vector qubit cap exceeded");
    }
    PauliCoeffVector m{n, std::vector<double>(pauli_dim(n), 0.0)};
    m.entries[obs.string.basis_index()] = 1.0;
    return m;
}

double expectation_from_pauli(const PauliCoeffVector &m, const PauliCoeffVector &alpha,
                              double b_o) {
    if (m.dim() != alpha.dim()) {
        throw InvalidInput("coefficient vectors differ in length");
    }
    std::size_t hot = 0;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.entries[i] != 0.0) {
            hot = i;
            ++nonzero;
        }
    }
    if (nonzero != 1 || m.entries[hot] != 1.0) {
        throw InvalidInput("observable vector must be one-hot");
    }
    return b_o * alpha.entries[hot];
}

TransferMatrix transfer_matrix(const Eigen::MatrixXcd &unitary, int max_qubits) {
    if (unitary.rows() != unitary.cols()) {
        throw InvalidInput("unitary must be square");
    }
    const int n = qubits_of_dim(unitary.rows());
    if (n > max_qubits) {
        throw CapacityError("transfer matrix for " + std::to_string(n) +
                            " qubits exceeds the dense cap of " + std::to_string(max_qubits) +
                            "; use the statevector backend");
    }
    const auto pdim = static_cast<Eigen::Index>(pauli_dim(n));
    const auto dim = unitary.rows();
    const double inv = 1.0 / static_cast<double>(dim);
    const Eigen::MatrixXcd u_dag = unitary.adjoint();

    std::vector<PauliAction> actions;
    actions.reserve(static_cast<std::size_t>(pdim));
    for (Eigen::Index i = 0; i < pdim; ++i) {
        actions.push_back(PauliAction::of(PauliString::from_index(static_cast<std::size_t>(i), n)));
    }

    TransferMatrix t{n, Eigen::MatrixXd(pdim, pdim)};
    // Columns are independent; each worker writes only its own column.
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index j = 0; j < pdim; ++j) {
        const PauliAction &pj = actions[static_cast<std::size_t>(j)];
        // P_j e_c = phase(c) e_{c ^ flip}, so (U P_j)[:, c] = phase(c) U[:, c ^ flip].
        Eigen::MatrixXcd up(dim, dim);
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto cc = static_cast<std::size_t>(c);
            up.col(c) = pj.phase(cc) * unitary.col(static_cast<Eigen::Index>(cc ^ pj.flip));
        }
        const Eigen::MatrixXcd conj = up * u_dag;
        for (Eigen::Index i = 0; i < pdim; ++i) {
            t.entries(i, j) = inv * pauli_trace(actions[static_cast<std::size_t>(i)], conj).real();
        }
    }
    return t;
}

TransferMatrix transfer_matrix(const CircuitSpec &circuit, std::span<const double> theta,
                               int max_qubits) {
    if (circuit.n_qubits() > max_qubits) {
        throw CapacityError("transfer matrix for " + std::to_string(circuit.n_qubits()) +
                            " qubits exceeds the dense cap of " + std::to_string(max_qubits) +
                            "; use the statevector backend");
    }
    return transfer_matrix(circuit_unitary(circuit, theta), max_qubits);
}

PauliCoeffVector model_weight_vector(const TransferMatrix &t, const PauliCoeffVector &m) {
    if (m.dim() != static_cast<std::size_t>(t.entries.rows())) {
        throw InvalidInput("transfer matrix / observable vector dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> mv(m.entries.data(),
                                               static_cast<Eigen::Index>(m.dim()));
    const Eigen::VectorXd w = t.entries.transpose() * mv;
    return {t.n_qubits, std::vector<double>(w.data(), w.data() + w.size())};
}

double purity(const PauliCoeffVector &alpha) {
    return alpha.squared_norm() / std::ldexp(1.0, alpha.n_qubits);
}

} // namespace qgb
