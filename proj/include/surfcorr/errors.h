// Copyright 2026 The surfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SURFCORR_ERRORS_H
#define SURFCORR_ERRORS_H

#include <stdexcept>

namespace surfcorr {

/// A caller broke a documented precondition (size mismatch, bad parameter range, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Decoding or threshold estimation has no valid answer for the given input.
/// A result failed an internal consistency check.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A noise model does not have the structure an analysis step requires.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An experiment configuration failed validation. The message names the field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace surfcorr

#endif
