// Copyright 2026 The MOVCO Authors
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

#ifndef MOVCO_ERROR_HPP
#define MOVCO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace movco {

/// Bad caller input: wrong lengths, out-of-range sizes, malformed configs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured size limit (statevector qubits,
/// exhaustive-search bits).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An object violates its own invariant, e.g. a non-normalized state.
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied callback (evaluator, objective) failed or returned
/// something unusable. The message carries where in the run it happened.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace movco

#endif  // MOVCO_ERROR_HPP
