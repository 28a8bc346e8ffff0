// Copyright 2026 The risfas Authors
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

#ifndef RISFAS_ERRORS_HPP
#define RISFAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risfas {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method hit its term/iteration cap before meeting tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid scenario configuration. `key_path()` names the offending field,
// e.g. "m2[1][0]".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::invalid_argument(key_path + ": " + message), key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace risfas

#endif  // RISFAS_ERRORS_HPP
