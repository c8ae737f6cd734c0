// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#ifndef GMG_ERROR_HPP
#define GMG_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmg {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition (dimension mismatch,
/// non-square operand, invalid configuration, oracle cap exceeded).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(what) {}
};

/// Malformed input file. Carries the 1-based line number of the offense.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::int64_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

/// Factorization could not be completed (zero pivot, exhausted shifts).
class FactorError : public Error {
 public:
  FactorError(const std::string& what, std::int64_t row)
      : Error(what), row_(row) {}

  std::int64_t row() const { return row_; }

 private:
  std::int64_t row_;
};

}  // namespace gmg

#endif  // GMG_ERROR_HPP
