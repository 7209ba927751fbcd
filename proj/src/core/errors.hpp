// Copyright 2026 The Postsel Authors
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

namespace postsel {

/// Base class for every error raised by the core library. Each subclass maps
/// onto one status code of the C API.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on a value (index, weight, epsilon, matrix) was violated.
struct DomainError : Error {
    using Error::Error;
};

/// A request exceeds a fixed size limit (qubits, family size, LP size).
struct CapacityError : Error {
    using Error::Error;
};

/// Amplitude or spectral mass found on subsets larger than the degree budget.
struct DegreeOverflowError : Error {
    using Error::Error;
};

/// The postselected outcome has (numerically) zero probability.
struct PostselectionImpossible : Error {
    using Error::Error;
};

struct NumericalUnderflow : Error {
    using Error::Error;
};

/// A guarantee that holds by construction failed. Indicates a defect, not bad input.
struct TheoremViolation : Error {
    using Error::Error;
};

/// Error raised by a multi-stage pipeline; `stage` names the failing step.
struct StageError : Error {
    StageError(std::string stage_name, const std::string &what)
        : Error(stage_name + ": " + what), stage(std::move(stage_name)) {
    }
    std::string stage;
};

}  // namespace postsel
