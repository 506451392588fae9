/*
 * Copyright (C) 2026 The adcalc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adcalc {

enum class ErrorKind {
  NotPrime,
  ReduciblePolynomial,
  PrecisionTooSmall,
  ParamsMismatch,
  NonUnit,
  PrecisionExhausted,
  DomainError,
  UnsupportedPrime,
  ArityMismatch,
  SingularSeed,
  BudgetExceeded,
  MixedParams,
  ParseError,
  Inconsistent,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::PrecisionTooSmall: return "PrecisionTooSmall";
    case ErrorKind::ParamsMismatch: return "ParamsMismatch";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SingularSeed: return "SingularSeed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MixedParams: return "MixedParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace adcalc
