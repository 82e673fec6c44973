//
// Copyright 2026 The infolearn Authors
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
//

#ifndef INFOLEARN_ERROR_HPP_
#define INFOLEARN_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infolearn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input sample has no consistent hypothesis in the class.
class NonRealizableError : public Error {
 public:
  using Error::Error;
};

// A documented precondition failed. `index` names the offending element when
// the check is over a list (e.g. which kernel of a channel), otherwise -1.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what, std::int64_t index = -1)
      : Error(what), index_(index) {}
  std::int64_t index() const { return index_; }

 private:
  std::int64_t index_;
};

// Exhaustive enumeration would visit more than the configured number of
// samples.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required, std::uint64_t budget)
      : Error("enumeration budget exceeded: " + describe(required) +
              " samples required, budget " + std::to_string(budget) +
              "; use the signature or Monte Carlo path"),
        required_(required),
        budget_(budget) {}

  // UINT64_MAX means "does not fit in 64 bits".
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string describe(std::uint64_t required) {
    return required == UINT64_MAX ? std::string(">2^64") : std::to_string(required);
  }
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace infolearn

#endif  // INFOLEARN_ERROR_HPP_
