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

#include "qgb/datasets.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qgb/errors.hpp"
#include "qgb/hamiltonian.hpp"
#include "qgb/pauli.hpp"

using namespace qgb;

TEST(Hamiltonian, MatchesKroneckerOracle) {
    for (int n = 2; n <= 5; ++n) {
        const HamiltonianMatrix h = annni_hamiltonian(n, 0.35, 1.2);
        const oracle::Mat want = oracle::annni(n, 0.35, 1.2);
        EXPECT_LT((h.matrix.cast<std::complex<double>>() - want).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Hamiltonian, TwoSiteGroundEnergyIsMinusSqrtFive) {
    const GroundState gs = ground_state(annni_hamiltonian(2, 0.0, 1.0));
    EXPECT_NEAR(gs.energy, -std::sqrt(5.0), 1e-12);
}

TEST(Hamiltonian, GroundStateAgreesWithJacobiOracle) {
    for (const auto &[kappa, h] : {std::pair{0.2, 0.5}, {0.7, 1.5}, {0.5, 0.0}, {0.9, 2.0}}) {
        const HamiltonianMatrix hm = annni_hamiltonian(3, kappa, h);
        Eigen::MatrixXd vecs;
        const auto evals = oracle::jacobi_eigen(hm.matrix, &vecs);
        const GroundState gs = ground_state(hm);
        EXPECT_NEAR(gs.energy, evals[0], 1e-10);
        if (evals[1] - evals[0] > 1e-6) {
            double overlap = 0.0;
            for (std::size_t i = 0; i < 8; ++i) {
                overlap += gs.state[i].real() * vecs(static_cast<Eigen::Index>(i), 0);
            }
            EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
        }
        EXPECT_TRUE(gs.state.is_normalized(1e-12));
    }
}

TEST(Hamiltonian, StrongFieldAlignsSpinsWithZ) {
    const GroundState gs = ground_state(annni_hamiltonian(6, 0.0, 10.0));
    for (int q = 0; q < 6; ++q) {
        EXPECT_GE(pauli_expectation(gs.state.amplitudes(),
                                    PauliAction::of(PauliString::single(6, q, Pauli::Z))),
                  0.99);
    }
}

TEST(Hamiltonian, SignConventionMakesLargestAmplitudePositive) {
    const GroundState gs = ground_state(annni_hamiltonian(4, 0.3, 0.8));
    std::size_t best = 0;
    for (std::size_t i = 0; i < gs.state.dim(); ++i) {
        if (std::abs(gs.state[i]) > std::abs(gs.state[best]) + 1e-12) {
            best = i;
        }
    }
    EXPECT_GT(gs.state[best].real(), 0.0);
}

TEST(Hamiltonian, Errors) {
    EXPECT_THROW(annni_hamiltonian(1, 0.0, 1.0), InvalidInput);
    EXPECT_THROW(annni_hamiltonian(13, 0.0, 1.0), CapacityError);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
    asym(0, 1) = 1.0;
    EXPECT_THROW(HamiltonianMatrix::from_dense(asym), InvalidInput);
}

TEST(PhaseBoundaries, FrozenValues) {
    // Values frozen from an arbitrary-precision evaluation of the closed forms.
    EXPECT_NEAR(boundary_h_I(0.2), 0.6533598939, 1e-9);
    EXPECT_NEAR(boundary_h_C(0.6), 0.2347871376, 1e-9);
    EXPECT_NEAR(boundary_h_C(0.7), 0.3637306696, 1e-9);
    EXPECT_EQ(boundary_h_C(0.5), 0.0);
    EXPECT_NEAR(boundary_h_I(1e-7), 1.0, 1e-5);
}

TEST(PhaseBoundaries, DomainErrors) {
    EXPECT_THROW(boundary_h_I(0.0), DomainError);
    EXPECT_THROW(boundary_h_I(1.0), DomainError);
    EXPECT_THROW(boundary_h_C(0.3), DomainError);
}

TEST(PhaseBoundaries, LabelsFollowBoundary) {
    EXPECT_EQ(phase_label(0.0, 0.5), 1);
    EXPECT_EQ(phase_label(0.0, 1.5), -1);
    EXPECT_EQ(phase_label(0.2, 0.6), 1);
    EXPECT_EQ(phase_label(0.2, 0.7), -1);
    EXPECT_EQ(phase_label(0.7, 0.3), 1);
    EXPECT_EQ(phase_label(0.7, 0.4), -1);
    EXPECT_DOUBLE_EQ(phase_boundary(0.0), 1.0);
    EXPECT_DOUBLE_EQ(phase_boundary(0.6), boundary_h_C(0.6));
}

TEST(AnnniDataset, DeterministicAndWithinRanges) {
    const AnnniRanges r{0.1, 0.4, 0.5, 1.5};
    const LabeledDataset a = sample_annni_dataset(25, 4, r, 9);
    const LabeledDataset b = sample_annni_dataset(25, 4, r, 9, kernels::Backend::Serial);
    ASSERT_EQ(a.size(), 25U);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.labels, b.labels);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const AnnniPoint p = a.annni_points[i];
        EXPECT_GE(p.kappa, 0.1);
        EXPECT_LE(p.kappa, 0.4);
        EXPECT_GE(p.h, 0.5);
        EXPECT_LE(p.h, 1.5);
        EXPECT_EQ(a.labels[i], phase_label(p.kappa, p.h));
        EXPECT_TRUE(a.states[i].is_normalized(1e-12));
    }
    const LabeledDataset c = sample_annni_dataset(25, 4, r, 10);
    EXPECT_NE(a.labels, c.labels);
}

TEST(AnnniDataset, RegenerateFromDescriptor) {
    const LabeledDataset a = randomize_labels(sample_annni_dataset(12, 3, {}, 4), 77);
    const GeneratorDescriptor d = descriptor_from_json(to_json(a.generator));
    const LabeledDataset b = regenerate(d);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.labels, b.labels);
}

TEST(AnnniDataset, RandomLabelsAreFairCoins) {
    const LabeledDataset a = sample_annni_dataset(400, 2, {}, 5);
    const LabeledDataset r = randomize_labels(a, 6);
    EXPECT_EQ(a.states, r.states);
    double sum = 0.0;
    for (double y : r.labels) {
        EXPECT_TRUE(y == 1.0 || y == -1.0);
        sum += y;
    }
    EXPECT_LT(std::abs(sum / 400.0), 0.15);
    EXPECT_NE(a.labels, r.labels);
}

TEST(AnnniDataset, SubsetKeepsOrder) {
    const LabeledDataset a = sample_annni_dataset(6, 2, {}, 1);
    const std::vector<std::size_t> idx{4, 0, 4};
    const LabeledDataset s = a.subset(idx);
    ASSERT_EQ(s.size(), 3U);
    EXPECT_EQ(s.states[0], a.states[4]);
    EXPECT_EQ(s.labels[1], a.labels[0]);
}

TEST(Regression, TargetRangeAndFormula) {
    EXPECT_DOUBLE_EQ(regression_target(std::vector<double>{0.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(regression_target(std::vector<double>{1.0, -1.0}), 0.0);
    EXPECT_DOUBLE_EQ(regression_target(std::vector<double>{0.5}), 0.75);
    const LabeledDataset d = sample_regression_dataset(100, 3, 8, Encoding::AngleRy);
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_GE(d.labels[i], 0.0);
        EXPECT_LE(d.labels[i], 1.0);
        for (double x : d.features[i]) {
            EXPECT_GE(x, -1.0);
            EXPECT_LE(x, 1.0);
        }
        EXPECT_DOUBLE_EQ(d.labels[i], regression_target(d.features[i]));
    }
}

TEST(Regression, EncodedStatesMatchEncoder) {
    const LabeledDataset d = sample_regression_dataset(5, 2, 3, Encoding::SpecialDiag);
    EXPECT_EQ(d.states[0].n_qubits(), 4);
    EXPECT_EQ(d.states[2], encode_features(Encoding::SpecialDiag, d.features[2], 4));
}

TEST(Regression, QubitCap) {
    EXPECT_THROW(sample_regression_dataset(2, 11, 0, Encoding::SpecialDiag), InvalidInput);
    EXPECT_NO_THROW(sample_regression_dataset(2, 10, 0, Encoding::SpecialDiag));
}

TEST(Datasets, StatesCsvLayout) {
    const LabeledDataset d = sample_annni_dataset(2, 1 + 1, {}, 3);
    std::ostringstream os;
    write_states_csv(os, d);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header, "index,label,re_0,im_0,re_1,im_1,re_2,im_2,re_3,im_3");
}
