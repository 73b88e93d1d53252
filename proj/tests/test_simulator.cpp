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

#include "qgb/simulator.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qgb/checks.hpp"
#include "qgb/errors.hpp"
#include "qgb/rng.hpp"

using namespace qgb;

namespace {

double max_diff(const StateVector &s, const Eigen::VectorXcd &v) {
    double d = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        d = std::max(d, std::abs(s[i] - v(static_cast<Eigen::Index>(i))));
    }
    return d;
}

std::vector<double> random_theta(const CircuitSpec &c, rng::Generator &g) {
    std::vector<double> t(static_cast<std::size_t>(c.n_params()));
    for (auto &x : t) {
        x = g.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return t;
}

} // namespace

TEST(Gates, EachKindMatchesDenseMatrix) {
    const int n = 4;
    rng::Generator g(5);
    const StateVector psi = checks::random_state(n, g);
    const std::vector<Gate> gates{Gate::rot_y(0, 0),     Gate::rot_z(3, 0),
                                  Gate::rot_y(2, 0),     Gate::hadamard(1),
                                  Gate::cnot(0, 3),      Gate::cnot(3, 1),
                                  Gate::angle_ry(2, 0.7), Gate::diag_exp(1, 2, 0.3),
                                  Gate::diag_exp(0, 1, -0.4, DiagSign::Plus)};
    for (const Gate &gate : gates) {
        const double angle = gate.trainable() ? 0.913 : gate.fixed_value;
        const StateVector out = apply_gate(psi, gate, angle);
        const Eigen::VectorXcd want = oracle::gate(gate, angle, n) * oracle::vec(psi);
        EXPECT_LT(max_diff(out, want), 1e-14) << static_cast<int>(gate.kind);
    }
}

TEST(Gates, TrainableRotationsUseHalfAngle) {
    // Ry(pi) with the half-angle convention maps |0> to |1>.
    const StateVector out = apply_gate(StateVector::zero(1), Gate::rot_y(0, 0), std::numbers::pi);
    EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[1]), 1.0, 1e-15);
}

TEST(Gates, AngleEncodingUsesFullAngle) {
    // exp(-i x Y)|0> = cos x |0> + sin x |1>.
    const double x = 0.37;
    const StateVector out = apply_gate(StateVector::zero(1), Gate::angle_ry(0, x), x);
    EXPECT_NEAR(out[0].real(), std::cos(x), 1e-15);
    EXPECT_NEAR(out[1].real(), std::sin(x), 1e-15);
}

TEST(Gates, SpecialEncodingPhasesFollowFeatureIndex) {
    // Feature i uses generator diag(k (i + 2)), k = 1..8; default sign gives exp(+i x H).
    const double x = 0.21;
    const Gate gate = Gate::diag_exp(0, 3, x);
    StateVector plus = StateVector::zero(3);
    for (std::size_t b = 0; b < 8; ++b) {
        plus[b] = 1.0 / std::sqrt(8.0);
    }
    const StateVector out = apply_gate(plus, gate, x);
    for (std::size_t b = 0; b < 8; ++b) {
        const double phase = x * static_cast<double>(b + 1) * 5.0;
        EXPECT_NEAR(std::abs(out[b] - std::polar(1.0 / std::sqrt(8.0), phase)), 0.0, 1e-14);
    }
}

TEST(Gates, Validation) {
    StateVector s = StateVector::zero(2);
    EXPECT_THROW(apply_gate_inplace(s, Gate::rot_y(2, 0), 0.1), InvalidInput);
    EXPECT_THROW(apply_gate_inplace(s, Gate::diag_exp(0, 1, 0.1), 0.1), InvalidInput);
    EXPECT_THROW(CircuitSpec(2, {Gate::cnot(1, 1)}, 0), InvalidInput);
}

TEST(Circuit, LayeredStructure) {
    const CircuitSpec c = CircuitSpec::layered(4, 3);
    EXPECT_EQ(c.n_params(), 36);
    EXPECT_EQ(c.trainable_gate_count(), 36);
    EXPECT_EQ(c.gates().size(), 3U * (12 + 4));
    EXPECT_EQ(CircuitSpec::layered(6, 20).trainable_gate_count(), 360);
    const Gate &last = c.gates()[15];
    EXPECT_EQ(last.kind, GateKind::CNOT);
    EXPECT_EQ(last.qubits[0], 3);
    EXPECT_EQ(last.qubits[1], 0);
}

TEST(Circuit, RejectsBadSpecs) {
    EXPECT_THROW(CircuitSpec(2, {Gate::rot_y(0, 1)}, 1), InvalidInput);
    EXPECT_THROW(CircuitSpec(2, {Gate::rot_y(3, 0)}, 1), InvalidInput);
    EXPECT_THROW(CircuitSpec::layered(2, -1), InvalidInput);
}

TEST(Circuit, EncodingQubitCounts) {
    EXPECT_EQ(qubits_for_encoding(Encoding::AngleRy, 6), 6);
    EXPECT_EQ(qubits_for_encoding(Encoding::SpecialDiag, 1), 3);
    EXPECT_EQ(qubits_for_encoding(Encoding::SpecialDiag, 10), 12);
    EXPECT_EQ(encoding_from_string("special"), Encoding::SpecialDiag);
    EXPECT_THROW(encoding_from_string("bogus"), InvalidInput);
}

TEST(Circuit, SpecialEncodingLeavesNonTrivialAmplitudes) {
    const std::vector<double> x{0.3, -0.5};
    const StateVector a = encode_features(Encoding::SpecialDiag, x, 4);
    const StateVector b = encode_features(Encoding::SpecialDiag, std::vector<double>{0.1, 0.2}, 4);
    EXPECT_TRUE(a.is_normalized());
    // Different features must give states that are not equal up to a global phase.
    EXPECT_LT(std::abs(inner(a.amplitudes(), b.amplitudes())), 1.0 - 1e-6);
}

TEST(RunCircuit, MatchesDenseUnitaryProduct) {
    rng::Generator g(21);
    for (int k = 0; k < 15; ++k) {
        const int n = 1 + static_cast<int>(g.below(4));
        const CircuitSpec c = checks::random_circuit(n, 1 + static_cast<int>(g.below(3)), g);
        const auto theta = random_theta(c, g);
        const StateVector psi = checks::random_state(n, g);
        const Eigen::VectorXcd want = oracle::circuit(c, theta) * oracle::vec(psi);
        EXPECT_LT(max_diff(run_circuit(c, theta, psi), want), 1e-13);
        EXPECT_LT((circuit_unitary(c, theta) - oracle::circuit(c, theta)).cwiseAbs().maxCoeff(),
                  1e-13);
    }
}

TEST(RunCircuit, PreservesNorm) {
    rng::Generator g(22);
    const CircuitSpec c = CircuitSpec::layered(5, 4);
    const StateVector out = run_circuit(c, random_theta(c, g), checks::random_state(5, g));
    EXPECT_NEAR(out.norm(), 1.0, 1e-13);
}

TEST(RunCircuit, ShapeErrors) {
    const CircuitSpec c = CircuitSpec::layered(2, 1);
    EXPECT_THROW(run_circuit(c, std::vector<double>(5), StateVector::zero(2)), InvalidInput);
    EXPECT_THROW(run_circuit(c, std::vector<double>(6), StateVector::zero(3)), InvalidInput);
}

TEST(Gradients, AdjointMatchesShiftRuleAndFiniteDifferences) {
    rng::Generator g(31);
    for (int k = 0; k < 10; ++k) {
        const int n = 1 + static_cast<int>(g.below(4));
        const CircuitSpec c = checks::random_circuit(n, 1 + static_cast<int>(g.below(3)), g);
        const auto theta = random_theta(c, g);
        const StateVector psi = checks::random_state(n, g);
        const Observable obs(PauliString::from_index(1 + g.below(pauli_dim(n) - 1), n), 1.3);
        const auto vg = adjoint_value_and_gradient(c, theta, psi, obs);
        EXPECT_NEAR(vg.value, expectation(run_circuit(c, theta, psi), obs), 1e-13);
        const auto shift = parameter_shift_gradient(c, theta, psi, obs);
        const oracle::Mat o = 1.3 * oracle::pauli_string(obs.string.str());
        const Eigen::VectorXcd v = oracle::vec(psi);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            EXPECT_NEAR(vg.gradient[i], shift[i], 1e-12);
            const double h = 1e-6;
            auto tp = theta;
            auto tm = theta;
            tp[i] += h;
            tm[i] -= h;
            const double fd = (oracle::expectation(oracle::circuit(c, tp) * v, o) -
                               oracle::expectation(oracle::circuit(c, tm) * v, o)) /
                              (2 * h);
            EXPECT_NEAR(vg.gradient[i], fd, 1e-8);
        }
    }
}

TEST(Gradients, SharedParameterAccumulates) {
    // Two half-angle gates on one slot: <Z> = cos(2t), derivative -2 sin(2t).
    const CircuitSpec c(1, {Gate::rot_y(0, 0), Gate::rot_y(0, 0)}, 1);
    const double t = 0.4;
    const auto grad = adjoint_gradient(c, std::vector<double>{t}, StateVector::zero(1),
                                       Observable::z_first(1));
    EXPECT_NEAR(grad[0], -2.0 * std::sin(2.0 * t), 1e-14);
}

TEST(Gradients, EncodingPrefixIsNotDifferentiated) {
    std::vector<Gate> gates = encoding_gates(Encoding::AngleRy, std::vector<double>{0.2, 0.9}, 2);
    gates.push_back(Gate::rot_y(0, 0));
    const CircuitSpec c(2, gates, 1);
    const auto grad = adjoint_gradient(c, std::vector<double>{0.3}, StateVector::zero(2),
                                       Observable::z_first(2));
    ASSERT_EQ(grad.size(), 1U);
    // <Z_0> = cos(2 * 0.2 + theta).
    EXPECT_NEAR(grad[0], -std::sin(0.4 + 0.3), 1e-14);
}
