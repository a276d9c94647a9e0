// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace primpairs {

enum class ErrorCode {
  InvalidParameters = 1,
  NotAPrimePower,
  DivisionByZero,
  InvalidDivisor,
  TooLarge,
  NotApplicable,
  PreconditionFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace primpairs
