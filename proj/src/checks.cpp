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

#include "qgb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgb/kernels.hpp"
#include "qgb/pauli.hpp"
#include "qgb/simulator.hpp"
#include "qgb/training.hpp"

namespace qgb::checks {

CircuitSpec random_circuit(int n_qubits, int layers, rng::Generator &gen) {
    std::vector<Gate> gates;
    int slot = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n_qubits; ++q) {
            switch (gen.below(3)) {
            case 0:
                gates.push_back(Gate::rot_y(q, slot++));
                break;
            case 1:
                gates.push_back(Gate::rot_z(q, slot++));
                break;
            default:
                gates.push_back(Gate::hadamard(q));
                gates.push_back(Gate::rot_y(q, slot++));
                break;
            }
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            if (gen.below(2) == 0) {
                gates.push_back(Gate::cnot(q, q + 1));
            } else {
                gates.push_back(Gate::cnot(q + 1, q));
            }
        }
    }
    return {n_qubits, std::move(gates), slot};
}

StateVector random_state(int n_qubits, rng::Generator &gen) {
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    for (auto &a : amps) {
        const double re = gen.normal();
        const double im = gen.normal();
        a = {re, im};
    }
    StateVector s = StateVector::from_amplitudes(std::move(amps));
    s.normalize();
    return s;
}

namespace {

std::vector<double> random_angles(std::size_t n, rng::Generator &gen) {
    std::vector<double> t(n);
    for (auto &v : t) {
        v = gen.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return t;
}

Observable random_observable(int n, rng::Generator &gen) {
    const std::size_t idx = 1 + gen.below(pauli_dim(n) - 1);
    return {PauliString::from_index(idx, n), gen.uniform(0.5, 2.0)};
}

} // namespace

std::vector<CheckResult> check_ptm(int n_circuits, int n_cases, std::uint64_t seed) {
    rng::Generator gen(rng::derive(seed, 0xC001));
    CheckResult orth{"ptm_orthogonality", 0.0, 1e-10, 0};
    CheckResult expv{"pauli_vs_statevector_expectation", 0.0, 1e-10, 0};
    CheckResult pur{"purity_identity", 0.0, 1e-9, 0};
    std::vector<CircuitSpec> circuits;
    std::vector<std::vector<double>> thetas;
    std::vector<TransferMatrix> ptms;
    for (int c = 0; c < n_circuits; ++c) {
        const int n = 1 + static_cast<int>(gen.below(4));
        const int layers = 1 + static_cast<int>(gen.below(3));
        circuits.push_back(random_circuit(n, layers, gen));
        thetas.push_back(random_angles(static_cast<std::size_t>(circuits.back().n_params()), gen));
        ptms.push_back(transfer_matrix(circuits.back(), thetas.back()));
        orth.max_error = std::max(orth.max_error, ptms.back().orthogonality_defect());
        ++orth.cases;
    }
    for (int k = 0; k < n_cases && n_circuits > 0; ++k) {
        const auto c = static_cast<std::size_t>(k % n_circuits);
        const int n = circuits[c].n_qubits();
        const StateVector psi = random_state(n, gen);
        const Observable obs = random_observable(n, gen);
        const double direct = expectation(run_circuit(circuits[c], thetas[c], psi), obs);
        const PauliCoeffVector alpha = state_to_pauli_vector(psi);
        const PauliCoeffVector w = model_weight_vector(ptms[c], observable_vector(obs));
        double via_pauli = 0.0;
        for (std::size_t i = 0; i < alpha.dim(); ++i) {
            via_pauli += w.entries[i] * alpha.entries[i];
        }
        via_pauli *= obs.spectral_norm;
        expv.max_error = std::max(expv.max_error, std::abs(direct - via_pauli));
        ++expv.cases;
        pur.max_error = std::max(pur.max_error,
                                 std::abs(alpha.squared_norm() - std::ldexp(1.0, n)));
        ++pur.cases;
    }
    return {orth, expv, pur};
}

std::vector<CheckResult> check_gradients(int n_instances, std::uint64_t seed) {
    rng::Generator gen(rng::derive(seed, 0xC002));
    CheckResult shift{"adjoint_vs_parameter_shift", 0.0, 1e-9, 0};
    CheckResult fd{"adjoint_vs_finite_difference_rel", 0.0, 1e-5, 0};
    for (int k = 0; k < n_instances; ++k) {
        const int n = 1 + static_cast<int>(gen.below(4));
        const int layers = 1 + static_cast<int>(gen.below(3));
        const CircuitSpec circuit = CircuitSpec::layered(n, layers);
        const std::vector<double> theta =
            random_angles(static_cast<std::size_t>(circuit.n_params()), gen);
        const StateVector psi = random_state(n, gen);
        const Observable obs = random_observable(n, gen);
        const std::vector<double> adj = adjoint_gradient(circuit, theta, psi, obs);
        const std::vector<double> ps = parameter_shift_gradient(circuit, theta, psi, obs);
        const double h = 1e-5;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            shift.max_error = std::max(shift.max_error, std::abs(adj[i] - ps[i]));
            std::vector<double> tp = theta;
            std::vector<double> tm = theta;
            tp[i] += h;
            tm[i] -= h;
            const double g = (expectation(run_circuit(circuit, tp, psi), obs) -
                              expectation(run_circuit(circuit, tm, psi), obs)) /
                             (2.0 * h);
            num = std::max(num, std::abs(adj[i] - g));
            den = std::max(den, std::abs(g));
        }
        fd.max_error = std::max(fd.max_error, num / std::max(den, 1e-12));
        ++shift.cases;
        ++fd.cases;
    }
    return {shift, fd};
}

std::vector<CheckResult> check_backends(int n_instances, std::uint64_t seed) {
    rng::Generator gen(rng::derive(seed, 0xC003));
    CheckResult pred{"serial_vs_openmp_predict", 0.0, 0.0, 0};
    CheckResult grad{"serial_vs_openmp_gradient", 0.0, 0.0, 0};
    const kernels::PointLoss loss = point_loss(LossKind::Hinge);
    for (int k = 0; k < n_instances; ++k) {
        const int n = 2 + static_cast<int>(gen.below(3));
        const CircuitSpec circuit = CircuitSpec::layered(n, 2);
        const std::vector<double> theta =
            random_angles(static_cast<std::size_t>(circuit.n_params()), gen);
        const std::size_t m = 16 + gen.below(48);
        std::vector<StateVector> states;
        std::vector<double> labels;
        for (std::size_t i = 0; i < m; ++i) {
            states.push_back(random_state(n, gen));
            labels.push_back(gen.sign());
        }
        const std::vector<std::size_t> idx = kernels::iota_indices(m);
        const Observable obs = Observable::z_first(n);
        const auto a = kernels::serial::predict(circuit, theta, states, idx, obs);
        const auto b = kernels::omp::predict(circuit, theta, states, idx, obs);
        for (std::size_t i = 0; i < m; ++i) {
            pred.max_error = std::max(pred.max_error, std::abs(a[i] - b[i]));
        }
        const kernels::Batch batch{states, labels, idx};
        const auto ra = kernels::serial::loss_and_gradient(circuit, theta, batch, obs, loss);
        const auto rb = kernels::omp::loss_and_gradient(circuit, theta, batch, obs, loss);
        grad.max_error = std::max(grad.max_error, std::abs(ra.mean_loss - rb.mean_loss));
        for (std::size_t i = 0; i < ra.gradient.size(); ++i) {
            grad.max_error = std::max(grad.max_error, std::abs(ra.gradient[i] - rb.gradient[i]));
        }
        ++pred.cases;
        ++grad.cases;
    }
    return {pred, grad};
}

} // namespace qgb::checks
