// Copyright 2026 The summrank Authors.
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

#ifndef SUMMRANK_ERRORS_H_
#define SUMMRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace summrank {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed arguments that violate an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data (a corpus, an artifact file) failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation received input it cannot produce a meaningful result for,
// e.g. a document without sentences.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// The remote scorer could not be reached.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempts)"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// The remote scorer answered with something that breaks the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace summrank

#endif  // SUMMRANK_ERRORS_H_
