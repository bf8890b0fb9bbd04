// Copyright 2026 The fairtest-sym Authors
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

#ifndef FAIRTEST_ERRORS_H_
#define FAIRTEST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fairtest {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed schema sidecar or schema invariant violation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class UnknownCategory : public Error {
 public:
  using Error::Error;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// Training data contains a single class.
class DegenerateLabels : public Error {
 public:
  using Error::Error;
};

class EmptySampleSet : public Error {
 public:
  using Error::Error;
};

class TooFewRows : public Error {
 public:
  using Error::Error;
};

// Protected-value product exceeds the configured cap.
class CombinationExplosion : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Failures talking to an external model process. All three map to the
// CLI's "model protocol failure" exit code.
class ModelError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public ModelError {
 public:
  using ModelError::ModelError;
};

class TimeoutError : public ModelError {
 public:
  using ModelError::ModelError;
};

class ChildExited : public ModelError {
 public:
  using ModelError::ModelError;
};

}  // namespace fairtest

#endif  // FAIRTEST_ERRORS_H_
