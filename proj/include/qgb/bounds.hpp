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

#include <cstddef>
#include <string_view>

#include <json.hpp>

/**
 * @file
 * Closed-form generalization bounds.
 *
 * All bounds use the natural logarithm unless LogBase::Two is requested.
 * Gate counts and epoch counts are kept in separately named fields because
 * the competitor bounds reuse the same letters for different quantities.
 */

namespace qgb::bounds {

enum class LogBase { Natural, Two };

enum class Family {
    General,
    Regression,
    Classification,
    KClass,
    CaroGateCount,
    EncodingDependent,
    SgdStability,
};

std::string_view to_string(Family f) noexcept;
Family family_from_string(std::string_view s);

/// 2 L B_O sqrt(1/M) + 3 C sqrt(log(2/delta) / (2M)).
double general(double lipschitz, double spectral_norm, double risk_bound, std::size_t m,
               double delta, LogBase base = LogBase::Natural);

/// General bound with L = B_O = C = 1 (absolute risk, Z...Z readout).
double regression(std::size_t m, double delta, LogBase base = LogBase::Natural);

/// General bound with L = 1/2, B_O = C = 1 (0-1 risk, Z_1 readout).
double classification(std::size_t m, double delta, LogBase base = LogBase::Natural);

/// K times the binary classification bound; K >= 2.
double kclass(int k_classes, std::size_t m, double delta, LogBase base = LogBase::Natural);

/// Error function.
double erf(double x);

/// Gate-count covering-number bound for T parameterized gates.
double caro(int t_gates, double spectral_norm, std::size_t m, double delta,
            LogBase base = LogBase::Natural);

/**
 * Encoding-dependent bound for d features, each through a k-local encoding
 * generator with 2^k distinct eigenvalues. The entropy-integral term is
 * left out. Returns log10 of the value through `log10_out` when given,
 * since the value grows geometrically in d.
 */
double encoding(double lipschitz, double spectral_norm, double risk_bound, int data_dim,
                int locality, std::size_t m, double delta, LogBase base = LogBase::Natural,
                double *log10_out = nullptr);

struct LogScaled {
    double value = 0.0;   ///< may be +inf when it overflows a double
    double log10 = 0.0;
};

/// Uniform-stability bound for SGD after T epochs; evaluated in log space.
LogScaled stability(double lipschitz, double grad_lipschitz, int k_gates, double spectral_norm,
                    std::size_t m, double learning_rate, int t_epochs);

struct Query {
    Family family = Family::Classification;
    std::size_t m = 1;
    double delta = 0.1;
    double lipschitz = 1.0;
    double risk_bound = 1.0;
    double spectral_norm = 1.0;
    int k_classes = 2;
    int t_gates = 1;         ///< CaroGateCount
    int data_dim = 1;        ///< EncodingDependent
    int locality = 3;        ///< EncodingDependent
    double grad_lipschitz = 1.0;
    double learning_rate = 0.005;
    int k_gates = 1;         ///< SgdStability
    int t_epochs = 0;        ///< SgdStability
    LogBase log_base = LogBase::Natural;
};

struct Value {
    Query query;
    double value = 0.0;
    double log10_value = 0.0;
};

Value evaluate(const Query &q);

/// {family, inputs{...}, value, log10_value}.
nlohmann::json to_json(const Value &v);

} // namespace qgb::bounds
