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

#include "qgb/state.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qgb/errors.hpp"

namespace qgb {

namespace {
void check_qubits(int n) {
    if (n < 1 || n > kMaxStateQubits) {
        throw CapacityError("statevector qubit count " + std::to_string(n) +
                            " outside [1, " + std::to_string(kMaxStateQubits) + "]");
    }
}
} // namespace

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    check_qubits(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw InvalidInput("basis index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw InvalidInput("state dimension " + std::to_string(dim) + " is not a power of two");
    }
    const int n = std::countr_zero(dim);
    check_qubits(n);
    return {n, std::move(amplitudes)};
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const noexcept {
    return std::abs(norm() - 1.0) <= tol;
}

void StateVector::normalize() {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericError("cannot normalize a zero or non-finite state");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) noexcept {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

} // namespace qgb
