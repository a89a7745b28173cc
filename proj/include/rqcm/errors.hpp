// Copyright 2026 The rqcm Authors
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

namespace rqcm {

/// Malformed arguments: length mismatches, bad bitstring literals, etc.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The requested problem exceeds what exhaustive or dense methods can hold.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// A formula was evaluated outside the parameter range it is stated for.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A tuple pair whose signed-delta function vanishes identically.
struct DegeneratePairError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant drifted past its guard (e.g. a distribution no
/// longer sums to 1).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rqcm
