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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "qgb/errors.hpp"
#include "qgb/hamiltonian.hpp"
#include "qgb/rng.hpp"

namespace qgb {

namespace {
std::string_view kind_name(DatasetKind k) { return k == DatasetKind::Annni ? "annni" : "regression"; }
} // namespace

nlohmann::json to_json(const GeneratorDescriptor &d) {
    nlohmann::json j;
    j["kind"] = kind_name(d.kind);
    j["n_qubits"] = d.n_qubits;
    j["dim"] = d.dim;
    j["size"] = d.size;
    j["kappa_range"] = {d.ranges.kappa_min, d.ranges.kappa_max};
    j["h_range"] = {d.ranges.h_min, d.ranges.h_max};
    j["seed"] = d.seed;
    j["encoding"] = to_string(d.encoding);
    j["diag_sign"] = static_cast<int>(d.diag_sign);
    if (d.label_seed) {
        j["label_seed"] = *d.label_seed;
    } else {
        j["label_seed"] = nullptr;
    }
    return j;
}

GeneratorDescriptor descriptor_from_json(const nlohmann::json &j) {
    GeneratorDescriptor d;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "annni") {
        d.kind = DatasetKind::Annni;
    } else if (kind == "regression") {
        d.kind = DatasetKind::Regression;
    } else {
        throw InvalidInput("unknown dataset kind '" + kind + "'");
    }
    d.n_qubits = j.at("n_qubits").get<int>();
    d.dim = j.value("dim", 0);
    d.size = j.at("size").get<std::size_t>();
    if (j.contains("kappa_range")) {
        d.ranges.kappa_min = j["kappa_range"].at(0).get<double>();
        d.ranges.kappa_max = j["kappa_range"].at(1).get<double>();
    }
    if (j.contains("h_range")) {
        d.ranges.h_min = j["h_range"].at(0).get<double>();
        d.ranges.h_max = j["h_range"].at(1).get<double>();
    }
    d.seed = j.at("seed").get<std::uint64_t>();
    d.encoding = encoding_from_string(j.value("encoding", std::string("none")));
    d.diag_sign = j.value("diag_sign", -1) >= 0 ? DiagSign::Plus : DiagSign::Minus;
    if (j.contains("label_seed") && !j["label_seed"].is_null()) {
        d.label_seed = j["label_seed"].get<std::uint64_t>();
    }
    return d;
}

Sample LabeledDataset::sample(std::size_t i) const {
    Sample s;
    if (!features.empty()) {
        s.features = features.at(i);
    }
    s.state = states.at(i);
    s.label = labels.at(i);
    if (!annni_points.empty()) {
        s.annni = annni_points.at(i);
    }
    return s;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
    LabeledDataset out;
    out.generator = generator;
    out.states.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
        out.states.push_back(states.at(i));
        out.labels.push_back(labels.at(i));
        if (!features.empty()) {
            out.features.push_back(features.at(i));
        }
        if (!annni_points.empty()) {
            out.annni_points.push_back(annni_points.at(i));
        }
    }
    out.generator.size = indices.size();
    return out;
}

double boundary_h_I(double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
        throw DomainError("h_I(kappa) needs 0 < kappa < 1, got " + std::to_string(kappa));
    }
    const double ratio = (1.0 - 3.0 * kappa + 4.0 * kappa * kappa) / (1.0 - kappa);
    return (1.0 - kappa) / kappa * (1.0 - std::sqrt(ratio));
}

double boundary_h_C(double kappa) {
    const double radicand = (kappa - 0.5) * (kappa - 0.1);
    if (radicand < 0.0) {
        throw DomainError("h_C(kappa) radicand negative at kappa=" + std::to_string(kappa));
    }
    return 1.05 * std::sqrt(radicand);
}

double phase_boundary(double kappa) {
    if (kappa < 0.5) {
        return kappa <= 0.0 ? 1.0 : boundary_h_I(kappa);
    }
    return boundary_h_C(kappa);
}

int phase_label(double kappa, double h) { return h < phase_boundary(kappa) ? 1 : -1; }

LabeledDataset sample_annni_dataset(std::size_t m, int n_qubits, const AnnniRanges &ranges,
                                    std::uint64_t seed, kernels::Backend backend) {
    if (m < 1) {
        throw InvalidInput("dataset size must be >= 1");
    }
    if (n_qubits > kDefaultHamiltonianCap) {
        throw CapacityError("ANNNI dataset capped at " + std::to_string(kDefaultHamiltonianCap) +
                            " qubits");
    }
    if (ranges.kappa_min < 0.0 || ranges.kappa_max > 1.0 ||
        ranges.kappa_min > ranges.kappa_max || ranges.h_min > ranges.h_max) {
        throw InvalidInput("invalid (kappa, h) sampling rectangle");
    }
    LabeledDataset ds;
    ds.generator = {DatasetKind::Annni, n_qubits, 0, m, ranges, seed,
                    Encoding::None, DiagSign::Minus, std::nullopt};

    rng::Generator gen(rng::derive(seed, rng::kDatasetStream));
    ds.annni_points.resize(m);
    ds.labels.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double kappa = gen.uniform(ranges.kappa_min, ranges.kappa_max);
        const double h = gen.uniform(ranges.h_min, ranges.h_max);
        ds.annni_points[i] = {kappa, h};
        ds.labels[i] = phase_label(kappa, h);
    }

    ds.states.resize(m);
    std::atomic<bool> failed{false};
    auto solve = [&](std::size_t i) {
        try {
            const auto &p = ds.annni_points[i];
            ds.states[i] = ground_state(annni_hamiltonian(n_qubits, p.kappa, p.h)).state;
        } catch (...) {
            failed = true;
        }
    };
    if (backend == kernels::Backend::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
            solve(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            solve(i);
        }
    }
    if (failed) {
        throw NumericError("ground-state solve failed for at least one ANNNI sample");
    }
    return ds;
}

LabeledDataset randomize_labels(const LabeledDataset &dataset, std::uint64_t seed) {
    if (dataset.generator.kind != DatasetKind::Annni) {
        throw InvalidInput("label randomization applies to classification datasets");
    }
    LabeledDataset out = dataset;
    rng::Generator gen(rng::derive(seed, rng::kLabelStream));
    for (double &y : out.labels) {
        y = gen.sign();
    }
    out.generator.label_seed = seed;
    return out;
}

double regression_target(std::span<const double> x) {
    if (x.empty()) {
        throw InvalidInput("regression target needs d >= 1");
    }
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return 1.0 - s / static_cast<double>(x.size());
}

LabeledDataset sample_regression_dataset(std::size_t m, int dim, std::uint64_t seed,
                                         Encoding encoding, DiagSign sign) {
    if (m < 1) {
        throw InvalidInput("dataset size must be >= 1");
    }
    if (encoding == Encoding::None) {
        throw InvalidInput("regression data needs an encoding");
    }
    const int n = qubits_for_encoding(encoding, dim);
    if (n > kMaxStateQubits) {
        throw InvalidInput(std::string(to_string(encoding)) + " encoding of " +
                           std::to_string(dim) + " features needs " + std::to_string(n) +
                           " qubits, above the cap of " + std::to_string(kMaxStateQubits));
    }
    LabeledDataset ds;
    ds.generator = {DatasetKind::Regression, n, dim, m, {}, seed, encoding, sign, std::nullopt};
    rng::Generator gen(rng::derive(seed, rng::kDatasetStream));
    ds.features.resize(m);
    ds.labels.resize(m);
    ds.states.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto &x = ds.features[i];
        x.resize(static_cast<std::size_t>(dim));
        for (double &v : x) {
            v = gen.uniform(-1.0, 1.0);
        }
        ds.labels[i] = regression_target(x);
        ds.states[i] = encode_features(encoding, x, n, sign);
    }
    return ds;
}

LabeledDataset regenerate(const GeneratorDescriptor &d, kernels::Backend backend) {
    LabeledDataset ds =
        d.kind == DatasetKind::Annni
            ? sample_annni_dataset(d.size, d.n_qubits, d.ranges, d.seed, backend)
            : sample_regression_dataset(d.size, d.dim, d.seed, d.encoding, d.diag_sign);
    if (d.label_seed) {
        ds = randomize_labels(ds, *d.label_seed);
    }
    return ds;
}

void write_states_csv(std::ostream &os, const LabeledDataset &dataset) {
    if (dataset.size() == 0) {
        return;
    }
    const std::size_t dim = dataset.states.front().dim();
    os << "index,label";
    for (std::size_t k = 0; k < dim; ++k) {
        os << ",re_" << k << ",im_" << k;
    }
    os << '\n';
    char buf[64];
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        os << i;
        std::snprintf(buf, sizeof buf, ",%.17g", dataset.labels[i]);
        os << buf;
        for (const Complex &a : dataset.states[i].amplitudes()) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g", a.real(), a.imag());
            os << buf;
        }
        os << '\n';
    }
}

} // namespace qgb
