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

#include "qgb/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qgb/errors.hpp"

namespace qgb::bounds {

namespace {

double log_b(double x, LogBase base) { return base == LogBase::Natural ? std::log(x) : std::log2(x); }

void check_common(std::size_t m, double delta) {
    if (m < 1) {
        throw DomainError("sample count M must be >= 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("confidence parameter delta must lie in (0, 1), got " +
                          std::to_string(delta));
    }
}

/// 3 C sqrt(log(2/delta) / (2M)).
double confidence_tail(double risk_bound, std::size_t m, double delta, LogBase base) {
    return 3.0 * risk_bound * std::sqrt(log_b(2.0 / delta, base) / (2.0 * static_cast<double>(m)));
}

} // namespace

std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::General:
        return "general";
    case Family::Regression:
        return "regression";
    case Family::Classification:
        return "classification";
    case Family::KClass:
        return "kclass";
    case Family::CaroGateCount:
        return "caro";
    case Family::EncodingDependent:
        return "encoding";
    case Family::SgdStability:
        return "stability";
    }
    return "?";
}

Family family_from_string(std::string_view s) {
    for (auto f : {Family::General, Family::Regression, Family::Classification, Family::KClass,
                   Family::CaroGateCount, Family::EncodingDependent, Family::SgdStability}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    throw InvalidInput("unknown bound family '" + std::string(s) + "'");
}

double general(double lipschitz, double spectral_norm, double risk_bound, std::size_t m,
               double delta, LogBase base) {
    check_common(m, delta);
    if (lipschitz < 0.0 || spectral_norm < 0.0 || risk_bound < 0.0) {
        throw DomainError("L, B_O and C must be non-negative");
    }
    return 2.0 * lipschitz * spectral_norm * std::sqrt(1.0 / static_cast<double>(m)) +
           confidence_tail(risk_bound, m, delta, base);
}

double regression(std::size_t m, double delta, LogBase base) {
    return general(1.0, 1.0, 1.0, m, delta, base);
}

double classification(std::size_t m, double delta, LogBase base) {
    return general(0.5, 1.0, 1.0, m, delta, base);
}

double kclass(int k_classes, std::size_t m, double delta, LogBase base) {
    if (k_classes < 2) {
        throw DomainError("K-class bound needs K >= 2");
    }
    return static_cast<double>(k_classes) * classification(m, delta, base);
}

double erf(double x) { return std::erf(x); }

double caro(int t_gates, double spectral_norm, std::size_t m, double delta, LogBase base) {
    check_common(m, delta);
    if (t_gates < 1) {
        throw DomainError("gate count T must be >= 1");
    }
    if (!(spectral_norm > 0.0)) {
        throw DomainError("B_O must be positive");
    }
    const double t = t_gates;
    const double mm = static_cast<double>(m);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double log2v = log_b(2.0, base);
    const double bracket = 0.5 * std::sqrt(log_b(6.0 * t, base)) + 0.5 * std::sqrt(log2v) -
                           0.5 * sqrt_pi * erf(std::sqrt(log2v)) - 0.5 * sqrt_pi;
    return 24.0 * spectral_norm / std::sqrt(mm) * std::sqrt(512.0 * t) * bracket +
           3.0 * spectral_norm * std::sqrt(2.0 * log_b(2.0 / delta, base) / mm);
}

double encoding(double lipschitz, double spectral_norm, double risk_bound, int data_dim,
                int locality, std::size_t m, double delta, LogBase base, double *log10_out) {
    check_common(m, delta);
    if (data_dim < 1 || locality < 1) {
        throw DomainError("data dimension d and locality k must be >= 1");
    }
    const double two_k = std::ldexp(1.0, locality);
    const double per_feature = two_k * (two_k - 1.0) / 2.0 + 1.0;
    const double d = data_dim;
    // log of (per_feature)^d, kept in log form to survive large d.
    const double log_count = d * log_b(per_feature, base);
    const double ln_count = d * std::log(per_feature);
    const double root =
        std::sqrt(log_b(6.0, base) + 0.5 * d * log_b(2.0 * std::numbers::pi, base) +
                  0.5 * log_count);
    const double ln_first = std::log(12.0 * lipschitz * spectral_norm) -
                            0.5 * std::log(static_cast<double>(m)) + 0.5 * ln_count +
                            std::log(root);
    const double tail = confidence_tail(risk_bound, m, delta, base);
    const double first = std::exp(ln_first);
    const double value = first + tail;
    if (log10_out != nullptr) {
        *log10_out = std::isfinite(value) ? std::log10(value) : ln_first / std::numbers::ln10;
    }
    return value;
}

LogScaled stability(double lipschitz, double grad_lipschitz, int k_gates, double spectral_norm,
                    std::size_t m, double learning_rate, int t_epochs) {
    if (m < 1) {
        throw DomainError("sample count M must be >= 1");
    }
    if (k_gates < 1 || t_epochs < 0 || !(lipschitz > 0.0) || !(spectral_norm > 0.0) ||
        grad_lipschitz < 0.0 || !(learning_rate > 0.0)) {
        throw DomainError("stability bound needs positive L, B_O, eta, K and T >= 0");
    }
    const double k = k_gates;
    const double rate = lipschitz * k * spectral_norm +
                        std::numbers::sqrt2 * grad_lipschitz * k * spectral_norm;
    const double prefactor = 2.0 * std::numbers::sqrt2 * lipschitz * lipschitz * k *
                             spectral_norm / (rate * static_cast<double>(m));
    const double log10v = std::log10(prefactor) +
                          static_cast<double>(t_epochs) * std::log10(1.0 + learning_rate * rate);
    return {std::pow(10.0, log10v), log10v};
}

Value evaluate(const Query &q) {
    Value v;
    v.query = q;
    switch (q.family) {
    case Family::General:
        v.value = general(q.lipschitz, q.spectral_norm, q.risk_bound, q.m, q.delta, q.log_base);
        break;
    case Family::Regression:
        v.value = regression(q.m, q.delta, q.log_base);
        break;
    case Family::Classification:
        v.value = classification(q.m, q.delta, q.log_base);
        break;
    case Family::KClass:
        v.value = kclass(q.k_classes, q.m, q.delta, q.log_base);
        break;
    case Family::CaroGateCount:
        v.value = caro(q.t_gates, q.spectral_norm, q.m, q.delta, q.log_base);
        break;
    case Family::EncodingDependent: {
        double l10 = 0.0;
        v.value = encoding(q.lipschitz, q.spectral_norm, q.risk_bound, q.data_dim, q.locality,
                           q.m, q.delta, q.log_base, &l10);
        v.log10_value = l10;
        return v;
    }
    case Family::SgdStability: {
        const LogScaled s = stability(q.lipschitz, q.grad_lipschitz, q.k_gates, q.spectral_norm,
                                      q.m, q.learning_rate, q.t_epochs);
        v.value = s.value;
        v.log10_value = s.log10;
        return v;
    }
    }
    v.log10_value = std::log10(v.value);
    return v;
}

nlohmann::json to_json(const Value &v) {
    const Query &q = v.query;
    nlohmann::json inputs{{"M", q.m}, {"delta", q.delta},
                          {"log_base", q.log_base == LogBase::Natural ? "e" : "2"}};
    switch (q.family) {
    case Family::General:
        inputs["L"] = q.lipschitz;
        inputs["B_O"] = q.spectral_norm;
        inputs["C"] = q.risk_bound;
        break;
    case Family::Regression:
    case Family::Classification:
        break;
    case Family::KClass:
        inputs["K_classes"] = q.k_classes;
        break;
    case Family::CaroGateCount:
        inputs["T_gates"] = q.t_gates;
        inputs["B_O"] = q.spectral_norm;
        break;
    case Family::EncodingDependent:
        inputs["L"] = q.lipschitz;
        inputs["B_O"] = q.spectral_norm;
        inputs["C"] = q.risk_bound;
        inputs["d"] = q.data_dim;
        inputs["k"] = q.locality;
        break;
    case Family::SgdStability:
        inputs["L"] = q.lipschitz;
        inputs["v_L"] = q.grad_lipschitz;
        inputs["K_gates"] = q.k_gates;
        inputs["B_O"] = q.spectral_norm;
        inputs["eta"] = q.learning_rate;
        inputs["T_epochs"] = q.t_epochs;
        break;
    }
    nlohmann::json j{{"family", to_string(q.family)}, {"inputs", inputs},
                     {"log10_value", v.log10_value}};
    if (std::isfinite(v.value)) {
        j["value"] = v.value;
    } else {
        j["value"] = nullptr;
    }
    return j;
}

} // namespace qgb::bounds
