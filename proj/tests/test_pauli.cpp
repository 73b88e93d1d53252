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

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qgb/checks.hpp"
#include "qgb/errors.hpp"
#include "qgb/rng.hpp"
#include "qgb/simulator.hpp"

using namespace qgb;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    rng::Generator g(seed);
    return checks::random_state(n, g);
}

} // namespace

TEST(PauliString, ParseAndPrint) {
    EXPECT_EQ(PauliString::parse("IXYZ").str(), "IXYZ");
    EXPECT_EQ(PauliString::parse("_X").str(), "IX");
    EXPECT_THROW(PauliString::parse(""), InvalidInput);
    EXPECT_THROW(PauliString::parse("XQ"), InvalidInput);
}

TEST(PauliString, BasisOrderIsIZXYWithQubitZeroMostSignificant) {
    EXPECT_EQ(PauliString::parse("I").basis_index(), 0U);
    EXPECT_EQ(PauliString::parse("Z").basis_index(), 1U);
    EXPECT_EQ(PauliString::parse("X").basis_index(), 2U);
    EXPECT_EQ(PauliString::parse("Y").basis_index(), 3U);
    EXPECT_EQ(PauliString::parse("ZI").basis_index(), 4U);
    EXPECT_EQ(PauliString::parse("IZ").basis_index(), 1U);
    EXPECT_EQ(PauliString::parse("YY").basis_index(), 15U);
}

TEST(PauliString, IndexRoundTrip) {
    for (int n = 1; n <= 3; ++n) {
        for (std::size_t i = 0; i < pauli_dim(n); ++i) {
            EXPECT_EQ(PauliString::from_index(i, n).basis_index(), i);
        }
    }
}

TEST(PauliAction, MatchesDenseMatrix) {
    for (const char *s : {"X", "Y", "Z", "XY", "YZX", "IYI", "YYY"}) {
        const PauliString p = PauliString::parse(s);
        const PauliAction a = PauliAction::of(p);
        const oracle::Mat dense = oracle::pauli_string(s);
        const auto dim = static_cast<std::size_t>(dense.rows());
        for (std::size_t b = 0; b < dim; ++b) {
            const auto col = static_cast<Eigen::Index>(b);
            const auto row = static_cast<Eigen::Index>(b ^ a.flip);
            EXPECT_NEAR(std::abs(dense(row, col) - a.phase(b)), 0.0, 1e-15) << s << " b=" << b;
        }
    }
}

TEST(PauliExpectation, MatchesDenseOracle) {
    for (int n = 1; n <= 3; ++n) {
        const StateVector psi = random_state(n, 10 + static_cast<std::uint64_t>(n));
        for (std::size_t i = 0; i < pauli_dim(n); ++i) {
            const PauliString p = PauliString::from_index(i, n);
            const double want = oracle::expectation(oracle::vec(psi), oracle::pauli_string(p.str()));
            EXPECT_NEAR(pauli_expectation(psi.amplitudes(), PauliAction::of(p)), want, 1e-13);
        }
    }
}

TEST(PauliVector, EntriesAreTracesAgainstPaulis) {
    const StateVector psi = random_state(2, 7);
    const PauliCoeffVector alpha = state_to_pauli_vector(psi);
    ASSERT_EQ(alpha.dim(), 16U);
    const Eigen::VectorXcd v = oracle::vec(psi);
    const oracle::Mat rho = v * v.adjoint();
    for (std::size_t i = 0; i < 16; ++i) {
        const oracle::Mat p = oracle::pauli_string(PauliString::from_index(i, 2).str());
        EXPECT_NEAR(alpha.entries[i], (p * rho).trace().real(), 1e-13);
    }
    EXPECT_NEAR(alpha.entries[0], 1.0, 1e-14);
}

TEST(PauliVector, PurityIdentityForPureStates) {
    for (int n = 1; n <= 5; ++n) {
        const PauliCoeffVector alpha = state_to_pauli_vector(random_state(n, 100 + static_cast<std::uint64_t>(n)));
        EXPECT_NEAR(alpha.squared_norm(), std::ldexp(1.0, n), 1e-10);
        EXPECT_NEAR(purity(alpha), 1.0, 1e-12);
    }
}

TEST(PauliVector, MixedStatePurityBelowOne) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    const PauliCoeffVector alpha = density_to_pauli_vector(rho);
    EXPECT_NEAR(purity(alpha), 0.25, 1e-14);
}

TEST(PauliVector, RejectsUnnormalizedAndOversizedStates) {
    StateVector s = StateVector::zero(2);
    s[0] = 2.0;
    EXPECT_THROW(state_to_pauli_vector(s), InvalidInput);
    EXPECT_THROW(state_to_pauli_vector(StateVector::zero(kMaxPauliVectorQubits + 1)),
                 CapacityError);
}

TEST(Observable, Validation) {
    EXPECT_THROW(Observable(PauliString::parse("Z"), 0.0), InvalidInput);
    EXPECT_THROW(Observable(PauliString::parse("Z"), -1.0), InvalidInput);
    EXPECT_THROW(Observable(PauliString::parse("Z"), std::nan("")), InvalidInput);
    EXPECT_EQ(Observable::z_first(3).string.str(), "ZII");
    EXPECT_EQ(Observable::z_all(3).string.str(), "ZZZ");
}

TEST(ExpectationFromPauli, ZOnZeroStateIsOne) {
    const PauliCoeffVector alpha = state_to_pauli_vector(StateVector::zero(1));
    const PauliCoeffVector m = observable_vector(Observable::z_first(1));
    EXPECT_DOUBLE_EQ(expectation_from_pauli(m, alpha, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(expectation_from_pauli(m, alpha, 2.5), 2.5);
}

TEST(ExpectationFromPauli, ShapeErrors) {
    const PauliCoeffVector a1 = state_to_pauli_vector(StateVector::zero(1));
    const PauliCoeffVector m2 = observable_vector(Observable::z_first(2));
    EXPECT_THROW(expectation_from_pauli(m2, a1, 1.0), InvalidInput);
    PauliCoeffVector not_one_hot = observable_vector(Observable::z_first(1));
    not_one_hot.entries[0] = 0.5;
    EXPECT_THROW(expectation_from_pauli(not_one_hot, a1, 1.0), InvalidInput);
}

TEST(TransferMatrix, EntriesMatchDenseTraceFormula) {
    rng::Generator g(3);
    const CircuitSpec c = checks::random_circuit(2, 2, g);
    std::vector<double> theta(static_cast<std::size_t>(c.n_params()));
    for (auto &t : theta) {
        t = g.uniform(-3.0, 3.0);
    }
    const TransferMatrix t = transfer_matrix(c, theta);
    const oracle::Mat u = oracle::circuit(c, theta);
    for (std::size_t i = 0; i < 16; ++i) {
        const oracle::Mat pi = oracle::pauli_string(PauliString::from_index(i, 2).str());
        for (std::size_t j = 0; j < 16; ++j) {
            const oracle::Mat pj = oracle::pauli_string(PauliString::from_index(j, 2).str());
            const double want = (pi * u * pj * u.adjoint()).trace().real() / 4.0;
            EXPECT_NEAR(t.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                        want, 1e-13);
        }
    }
}

TEST(TransferMatrix, IdentityCircuitGivesIdentity) {
    const CircuitSpec c = CircuitSpec::layered(2, 0);
    const TransferMatrix t = transfer_matrix(c, std::vector<double>{});
    EXPECT_LT((t.entries - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TransferMatrix, OrthogonalAndFixesIdentityOnRandomCircuits) {
    rng::Generator g(11);
    for (int k = 0; k < 10; ++k) {
        const int n = 1 + static_cast<int>(g.below(3));
        const CircuitSpec c = checks::random_circuit(n, 2, g);
        std::vector<double> theta(static_cast<std::size_t>(c.n_params()));
        for (auto &t : theta) {
            t = g.normal();
        }
        const TransferMatrix t = transfer_matrix(c, theta);
        EXPECT_LT(t.orthogonality_defect(), 1e-12);
        EXPECT_NEAR(t.entries(0, 0), 1.0, 1e-14);
        EXPECT_NEAR(t.entries.row(0).cwiseAbs().sum(), 1.0, 1e-12);
    }
}

TEST(TransferMatrix, PauliRouteMatchesStatevectorRoute) {
    rng::Generator g(12);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + static_cast<int>(g.below(3));
        const CircuitSpec c = CircuitSpec::layered(n, 1 + static_cast<int>(g.below(2)));
        std::vector<double> theta(static_cast<std::size_t>(c.n_params()));
        for (auto &t : theta) {
            t = g.normal();
        }
        const StateVector psi = checks::random_state(n, g);
        const Observable obs(PauliString::from_index(1 + g.below(pauli_dim(n) - 1), n), 1.7);
        const PauliCoeffVector alpha_out = transfer_matrix(c, theta).apply(state_to_pauli_vector(psi));
        const double via_pauli = expectation_from_pauli(observable_vector(obs), alpha_out, 1.7);
        const double direct = expectation(run_circuit(c, theta, psi), obs);
        EXPECT_NEAR(via_pauli, direct, 1e-12);
    }
}

TEST(TransferMatrix, CapacityGuard) {
    const CircuitSpec c = CircuitSpec::layered(kDefaultTransferMatrixCap + 1, 0);
    EXPECT_THROW(transfer_matrix(c, std::vector<double>{}), CapacityError);
    EXPECT_NO_THROW(transfer_matrix(CircuitSpec::layered(2, 0), std::vector<double>{}, 2));
}
