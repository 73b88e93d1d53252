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

#include <Eigen/Dense>

#include "qgb/state.hpp"

namespace qgb {

inline constexpr int kDefaultHamiltonianCap = 12;

/**
 * Dense Hamiltonian. Every model in scope is real symmetric in the
 * computational basis, so the matrix is stored real.
 */
struct HamiltonianMatrix {
    int n_qubits = 0;
    double kappa = 0.0;
    double h = 0.0;
    Eigen::MatrixXd matrix;

    /// Wraps a dense symmetric matrix. Throws InvalidInput if the dimension is
    /// not a power of two or the matrix is not symmetric within 1e-12.
    static HamiltonianMatrix from_dense(Eigen::MatrixXd m);
};

/// H = -(sum X_i X_{i+1} - kappa sum X_i X_{i+2} + h sum Z_i), open boundaries.
HamiltonianMatrix annni_hamiltonian(int n_qubits, double kappa, double h,
                                    int max_qubits = kDefaultHamiltonianCap);

struct GroundState {
    double energy = 0.0;
    StateVector state;
};

/**
 * Lowest eigenpair by dense symmetric eigensolve.
 *
 * Degenerate spectra resolve to the lowest-index column of the ascending
 * decomposition; the global sign is fixed so the largest-magnitude
 * amplitude (lowest index on ties) is positive.
 */
GroundState ground_state(const HamiltonianMatrix &h);

} // namespace qgb
