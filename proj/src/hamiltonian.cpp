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

#include "qgb/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qgb/errors.hpp"

namespace qgb {

HamiltonianMatrix HamiltonianMatrix::from_dense(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) {
        throw InvalidInput("Hamiltonian must be square");
    }
    const auto dim = static_cast<std::size_t>(m.rows());
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw InvalidInput("Hamiltonian dimension is not a power of two");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidInput("Hamiltonian is not symmetric");
    }
    HamiltonianMatrix h;
    h.n_qubits = std::countr_zero(dim);
    h.matrix = std::move(m);
    return h;
}

HamiltonianMatrix annni_hamiltonian(int n_qubits, double kappa, double h, int max_qubits) {
    if (n_qubits < 2) {
        throw InvalidInput("ANNNI chain needs at least 2 sites");
    }
    if (n_qubits > max_qubits) {
        throw CapacityError("ANNNI Hamiltonian for " + std::to_string(n_qubits) +
                            " sites exceeds the dense cap of " + std::to_string(max_qubits));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    HamiltonianMatrix out;
    out.n_qubits = n_qubits;
    out.kappa = kappa;
    out.h = h;
    out.matrix = Eigen::MatrixXd::Zero(dim, dim);

    auto mask = [n_qubits](int q) { return std::size_t{1} << (n_qubits - 1 - q); };
    for (Eigen::Index bi = 0; bi < dim; ++bi) {
        const auto b = static_cast<std::size_t>(bi);
        // -h sum Z_i
        double diag = 0.0;
        for (int q = 0; q < n_qubits; ++q) {
            diag += (b & mask(q)) != 0U ? -1.0 : 1.0;
        }
        out.matrix(bi, bi) = -h * diag;
        // -sum X_i X_{i+1}
        for (int q = 0; q + 1 < n_qubits; ++q) {
            const auto c = static_cast<Eigen::Index>(b ^ mask(q) ^ mask(q + 1));
            out.matrix(c, bi) -= 1.0;
        }
        // +kappa sum X_i X_{i+2}
        for (int q = 0; q + 2 < n_qubits; ++q) {
            const auto c = static_cast<Eigen::Index>(b ^ mask(q) ^ mask(q + 2));
            out.matrix(c, bi) += kappa;
        }
    }
    return out;
}

GroundState ground_state(const HamiltonianMatrix &h) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigensolver failed for " + std::to_string(h.n_qubits) +
                           "-qubit Hamiltonian (kappa=" + std::to_string(h.kappa) +
                           ", h=" + std::to_string(h.h) + ")");
    }
    // Eigenvalues come back ascending.
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            arg = i;
        }
    }
    if (v(arg) < 0.0) {
        v = -v;
    }
    std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = v(i);
    }
    GroundState gs{solver.eigenvalues()(0), StateVector::from_amplitudes(std::move(amps))};
    gs.state.normalize();
    return gs;
}

} // namespace qgb
