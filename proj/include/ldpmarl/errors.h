// Copyright 2026 The ldpmarl Authors.
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

#ifndef LDPMARL_ERRORS_H_
#define LDPMARL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ldpmarl {

// Invalid or inconsistent configuration (bad scale, unknown key, grid too
// small for the requested entities, unknown agent id).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric parameter outside its admissible domain (b <= 0, gamma <= 0,
// c <= b, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// An operation was invoked on inputs violating its precondition.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}
};

// Non-finite values or a sampler that failed to terminate.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed advice exchange (mismatched vector lengths).
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldpmarl

#endif  // LDPMARL_ERRORS_H_
