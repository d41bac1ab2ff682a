// Copyright 2026 The hetqec Authors
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

#ifndef HETQEC_ERRORS_HPP
#define HETQEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetqec {

/// Operand sizes disagree (qubit counts, syndrome lengths, tensor extents).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-supplied parameter is outside its documented domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on an operand's value does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object failed its own invariant checks.
class ValidationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested size is beyond what a brute-force routine supports.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating-point failure inside a numerical kernel.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hetqec

#endif  // HETQEC_ERRORS_HPP
