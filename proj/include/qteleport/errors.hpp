// Copyright 2026 The qteleport Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qtele {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (range, shape, normalization).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The Jacobi eigensolver hit its sweep cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A forced measurement branch has probability exactly zero.
class ImpossibleBranch : public Error {
 public:
  using Error::Error;
};

/// A forced measurement branch has a nonzero probability below the
/// renormalization threshold.
class BranchUnderflow : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace qtele
