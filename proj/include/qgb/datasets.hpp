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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgb/circuit.hpp"
#include "qgb/kernels.hpp"
#include "qgb/state.hpp"

namespace qgb {

/// Sampling rectangle for (kappa, h).
struct AnnniRanges {
    double kappa_min = 0.0;
    double kappa_max = 1.0;
    double h_min = 0.0;
    double h_max = 2.0;
};

struct AnnniPoint {
    double kappa = 0.0;
    double h = 0.0;
};

enum class DatasetKind { Annni, Regression };

/// Everything needed to regenerate a dataset bit for bit.
struct GeneratorDescriptor {
    DatasetKind kind = DatasetKind::Annni;
    int n_qubits = 0;
    int dim = 0; ///< feature dimension; 0 for quantum data
    std::size_t size = 0;
    AnnniRanges ranges;
    std::uint64_t seed = 0;
    Encoding encoding = Encoding::None;
    DiagSign diag_sign = DiagSign::Minus;
    std::optional<std::uint64_t> label_seed; ///< set once labels were randomized
};

nlohmann::json to_json(const GeneratorDescriptor &d);
GeneratorDescriptor descriptor_from_json(const nlohmann::json &j);

struct Sample {
    std::vector<double> features;
    StateVector state;
    double label = 0.0;
    std::optional<AnnniPoint> annni;
};

/// Column-major sample storage so kernels can address states by index.
struct LabeledDataset {
    GeneratorDescriptor generator;
    std::vector<StateVector> states;
    std::vector<double> labels;
    std::vector<std::vector<double>> features; ///< empty for quantum data
    std::vector<AnnniPoint> annni_points;      ///< empty for regression data

    [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
    [[nodiscard]] Sample sample(std::size_t i) const;
    /// Samples at `indices`, in that order. The descriptor is copied unchanged.
    [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> indices) const;
};

// ---- ANNNI phase labels ----

/// ((1-k)/k) (1 - sqrt((1 - 3k + 4k^2)/(1-k))), 0 < k < 1.
double boundary_h_I(double kappa);
/// 1.05 sqrt((k - 0.5)(k - 0.1)); needs a non-negative radicand.
double boundary_h_C(double kappa);
/// Ordered/disordered boundary: h_I below kappa = 0.5 (limit 1 at kappa = 0), h_C above.
double phase_boundary(double kappa);
/// +1 (ordered) iff h < phase_boundary(kappa), else -1.
int phase_label(double kappa, double h);

LabeledDataset sample_annni_dataset(std::size_t m, int n_qubits, const AnnniRanges &ranges,
                                    std::uint64_t seed,
                                    kernels::Backend backend = kernels::Backend::OpenMP);

/// Copy with every label replaced by an independent fair +-1 draw.
LabeledDataset randomize_labels(const LabeledDataset &dataset, std::uint64_t seed);

// ---- regression ----

/// 1 - x.x / d.
double regression_target(std::span<const double> x);

LabeledDataset sample_regression_dataset(std::size_t m, int dim, std::uint64_t seed,
                                         Encoding encoding,
                                         DiagSign sign = DiagSign::Minus);

/// Rebuilds a dataset from its descriptor.
LabeledDataset regenerate(const GeneratorDescriptor &d,
                          kernels::Backend backend = kernels::Backend::OpenMP);

/// index,label,re_0,im_0,re_1,im_1,... one row per sample.
void write_states_csv(std::ostream &os, const LabeledDataset &dataset);

} // namespace qgb
