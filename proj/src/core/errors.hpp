// Copyright 2026 The ACE Authors.
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

#ifndef ACE_CORE_ERRORS_HPP_
#define ACE_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ace {

// Base for every error raised by the core. The C API maps each subclass to a
// status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument lies outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The interval search range collapses to a single point (T < 2).
class DegenerateRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A record or state transition would break a data-structure invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-invalid experiment configuration. `key` names the
// offending JSON path.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ace

#endif  // ACE_CORE_ERRORS_HPP_
