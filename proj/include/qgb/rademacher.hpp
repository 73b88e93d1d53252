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
#include <span>
#include <vector>

#include "qgb/circuit.hpp"
#include "qgb/kernels.hpp"
#include "qgb/pauli.hpp"
#include "qgb/state.hpp"

namespace qgb {

struct RademacherOptions {
    int n_sigma = 200;
    int ascent_steps = 200;
    int restarts = 5;
    double learning_rate = 0.1;
    std::uint64_t seed = 0;
    /// Also maximize against the negated readout, i.e. treat the family as
    /// closed under a sign flip of the observable. Makes every draw >= 0.
    bool sign_closed = false;
    /// OpenMP runs sigma draws concurrently; results match Serial exactly.
    kernels::Backend backend = kernels::Backend::OpenMP;
};

struct RademacherEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::vector<double> per_draw;
};

/**
 * Monte-Carlo estimate of the empirical Rademacher complexity of
 * {x -> <O>_{U(theta) x}} on a fixed sample. Each draw maximizes
 * (1/M) sum sigma_m h(x_m; theta) by Adam ascent with random restarts, so the
 * result is a lower estimate of the supremum.
 */
RademacherEstimate rademacher_estimate(std::span<const StateVector> states,
                                       const CircuitSpec &circuit, const Observable &obs,
                                       const RademacherOptions &options);

} // namespace qgb
