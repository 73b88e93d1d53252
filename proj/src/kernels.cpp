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

#include "qgb/kernels.hpp"

#include <cmath>
#include <numbers>

#include "qgb/simulator.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace qgb::kernels {

// Pair loops visit each index i with bit q clear exactly once, with j = i | mask.
#define QGB_FOR_PAIRS(dim, mask, BODY)                                                    \
    for (std::size_t base = 0; base < (dim); base += 2 * (mask)) {                        \
        for (std::size_t i = base; i < base + (mask); ++i) {                              \
            const std::size_t j = i | (mask);                                             \
            BODY                                                                          \
        }                                                                                 \
    }

void rz(std::span<Complex> amps, int n_qubits, int q, double phi) noexcept {
    const std::size_t mask = qubit_mask(n_qubits, q);
    const Complex e0{std::cos(phi), -std::sin(phi)};
    const Complex e1{std::cos(phi), std::sin(phi)};
    QGB_FOR_PAIRS(amps.size(), mask, {
        amps[i] *= e0;
        amps[j] *= e1;
    })
}

void ry(std::span<Complex> amps, int n_qubits, int q, double phi) noexcept {
    const std::size_t mask = qubit_mask(n_qubits, q);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    QGB_FOR_PAIRS(amps.size(), mask, {
        const Complex a0 = amps[i];
        const Complex a1 = amps[j];
        amps[i] = c * a0 - s * a1;
        amps[j] = s * a0 + c * a1;
    })
}

void cnot(std::span<Complex> amps, int n_qubits, int control, int target) noexcept {
    const std::size_t cmask = qubit_mask(n_qubits, control);
    const std::size_t tmask = qubit_mask(n_qubits, target);
    QGB_FOR_PAIRS(amps.size(), tmask, {
        if ((i & cmask) != 0U) {
            std::swap(amps[i], amps[j]);
        }
    })
}

void hadamard(std::span<Complex> amps, int n_qubits, int q) noexcept {
    const std::size_t mask = qubit_mask(n_qubits, q);
    const double r = std::numbers::sqrt2 / 2.0;
    QGB_FOR_PAIRS(amps.size(), mask, {
        const Complex a0 = amps[i];
        const Complex a1 = amps[j];
        amps[i] = r * (a0 + a1);
        amps[j] = r * (a0 - a1);
    })
}

#undef QGB_FOR_PAIRS

void diag3(std::span<Complex> amps, int n_qubits, int first, std::span<const double, 8> phases,
           double x) noexcept {
    const int shift = n_qubits - 3 - first;
    Complex factor[8];
    for (std::size_t k = 0; k < 8; ++k) {
        factor[k] = std::polar(1.0, -phases[k] * x);
    }
    for (std::size_t b = 0; b < amps.size(); ++b) {
        amps[b] *= factor[(b >> shift) & 7U];
    }
}

void apply_pauli(std::span<Complex> amps, const PauliAction &action) noexcept {
    if (action.flip == 0) {
        for (std::size_t b = 0; b < amps.size(); ++b) {
            amps[b] *= action.phase(b);
        }
        return;
    }
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const std::size_t c = b ^ action.flip;
        if (b < c) {
            const Complex ab = amps[b];
            const Complex ac = amps[c];
            amps[c] = action.phase(b) * ab;
            amps[b] = action.phase(c) * ac;
        }
    }
}

Complex braket_z(std::span<const Complex> bra, std::span<const Complex> ket, int n_qubits,
                 int q) noexcept {
    const std::size_t mask = qubit_mask(n_qubits, q);
    Complex s{0.0, 0.0};
    for (std::size_t b = 0; b < ket.size(); ++b) {
        const Complex t = std::conj(bra[b]) * ket[b];
        s += (b & mask) != 0U ? -t : t;
    }
    return s;
}

Complex braket_y(std::span<const Complex> bra, std::span<const Complex> ket, int n_qubits,
                 int q) noexcept {
    // Y|0> = i|1>, Y|1> = -i|0>
    const std::size_t mask = qubit_mask(n_qubits, q);
    Complex s{0.0, 0.0};
    for (std::size_t base = 0; base < ket.size(); base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const std::size_t j = i | mask;
            s += std::conj(bra[j]) * ket[i] - std::conj(bra[i]) * ket[j];
        }
    }
    return Complex{0.0, 1.0} * s;
}

void apply_unchecked(std::span<Complex> amps, int n_qubits, const Gate &gate,
                     double angle) noexcept {
    switch (gate.kind) {
    case GateKind::RotY:
        ry(amps, n_qubits, gate.qubits[0], gate.generator_scale * angle);
        break;
    case GateKind::RotZ:
        rz(amps, n_qubits, gate.qubits[0], gate.generator_scale * angle);
        break;
    case GateKind::CNOT:
        cnot(amps, n_qubits, gate.qubits[0], gate.qubits[1]);
        break;
    case GateKind::Hadamard:
        hadamard(amps, n_qubits, gate.qubits[0]);
        break;
    case GateKind::DiagExp:
        diag3(amps, n_qubits, gate.qubits[0], gate.diag, angle);
        break;
    }
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = i;
    }
    return idx;
}

void set_num_threads(int n) {
#if defined(_OPENMP)
    if (n > 0) {
        omp_set_num_threads(n);
    }
#else
    (void)n;
#endif
}

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

std::vector<double> predict(const CircuitSpec &circuit, std::span<const double> theta,
                            std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs) {
    std::vector<double> out(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        out[k] = expectation(run_circuit(circuit, theta, states[indices[k]]), obs);
    }
    return out;
}

BatchResult loss_and_gradient(const CircuitSpec &circuit, std::span<const double> theta,
                              const Batch &batch, const Observable &obs, const PointLoss &loss) {
    const std::size_t n = batch.indices.size();
    BatchResult r;
    r.gradient.assign(static_cast<std::size_t>(circuit.n_params()), 0.0);
    r.predictions.resize(n);
    double loss_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = batch.indices[k];
        const ValueAndGradient vg =
            adjoint_value_and_gradient(circuit, theta, batch.states[m], obs);
        const LossPoint lp = loss(vg.value, batch.labels[m]);
        r.predictions[k] = vg.value;
        loss_sum += lp.value;
        for (std::size_t p = 0; p < r.gradient.size(); ++p) {
            r.gradient[p] += lp.slope * vg.gradient[p];
        }
    }
    const double inv = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
    r.mean_loss = loss_sum * inv;
    for (double &g : r.gradient) {
        g *= inv;
    }
    return r;
}

} // namespace serial

std::vector<double> predict(Backend backend, const CircuitSpec &circuit,
                            std::span<const double> theta, std::span<const StateVector> states,
                            std::span<const std::size_t> indices, const Observable &obs) {
    return backend == Backend::Serial ? serial::predict(circuit, theta, states, indices, obs)
                                      : omp::predict(circuit, theta, states, indices, obs);
}

BatchResult loss_and_gradient(Backend backend, const CircuitSpec &circuit,
                              std::span<const double> theta, const Batch &batch,
                              const Observable &obs, const PointLoss &loss) {
    return backend == Backend::Serial
               ? serial::loss_and_gradient(circuit, theta, batch, obs, loss)
               : omp::loss_and_gradient(circuit, theta, batch, obs, loss);
}

} // namespace qgb::kernels
