// Copyright 2026 The cvnet Authors
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

namespace cvnet {

/// Argument outside the documented parameter domain (model parameters,
/// squeezing, node indices).
class ParameterError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Input data failed a structural check (non-symmetric covariance, malformed
/// adjacency, schema violation in a config document).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a hard size limit of an exhaustive algorithm.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// The Gaussian state carries no weight on the requested n-photon sector of
/// the subtraction mode, so the conditional state is undefined.
class DegenerateSubtractionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A photon-number variance vanished, so a normalised correlation is undefined.
class DegenerateVarianceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An analytically guaranteed property was violated numerically.
class ConsistencyError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// File missing, unreadable or unwritable.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Process exit codes used by the command-line tool.
enum class ExitCode : int {
    ok = 0,
    usage = 1,
    parameter = 2,
    io = 3,
    numerical = 4,
    internal = 5,
};

/// Maps the currently handled exception to its exit code. Must be called from
/// inside a catch block.
ExitCode exit_code_for_current_exception() noexcept;

}  // namespace cvnet
