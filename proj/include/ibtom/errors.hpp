// Copyright 2026 The ibtom Authors. All rights reserved.
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

#ifndef IBTOM_ERRORS_HPP_
#define IBTOM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ibtom {

// Invalid distribution or model parameter (nonpositive shape, negative decay).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed caller input: bad asset id, empty option list, non-finite value.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on internal state was broken, e.g. time regression.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Query for an option key that has no instances in the store.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Unsupported combination of model kind and options.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Command line or config file rejected. key() names the offending setting.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ibtom

#endif  // IBTOM_ERRORS_HPP_
