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

#include <stdexcept>
#include <string>

namespace qgb {

/// Argument violates a documented precondition (shape, range, label set).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds a configured dense-representation cap.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Mathematical domain violation (e.g. delta outside (0,1), negative radicand).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Non-finite values or solver failure.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qgb
