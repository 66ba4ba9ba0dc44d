// Copyright 2026 The pgnet Authors.
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

#ifndef PGNET_ERROR_H_
#define PGNET_ERROR_H_

#include <stdexcept>
#include <string>

namespace pgnet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed documents, violated invariants, bad arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A point fell outside the declared domain of a function.
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A precondition of a computation does not hold at the supplied point
// (boundary equilibrium, violated equilibrium identity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed: singular system, divergence, no convergence.
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgnet

#endif  // PGNET_ERROR_H_
