// Copyright 2026 The qrc Authors
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
#include <stdexcept>
#include <string>

namespace qrc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two registers that were meant to be disjoint share a qubit.
class RegisterConflict : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Operator pair too close to proportional for the requested construction.
class DegeneracyError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed operator or state text.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : PreconditionError(what + " (column " + std::to_string(column) + ")"),
        column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// An internal postcondition failed. Indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qrc
