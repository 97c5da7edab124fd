// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

/// Bad argument, malformed spec string, or violated precondition on input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested Fourier index or subspace index that does not exist at the
/// current truncation.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Refusal to compute because a mathematical hypothesis does not hold
/// (e.g. nondecreasing weights, a product the truncation would kill).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method failed to converge. Carries the last iterate value.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double last_value)
      : std::runtime_error(what), last_value_(last_value) {}

  double last_value() const noexcept { return last_value_; }

 private:
  double last_value_;
};

}  // namespace opalg
