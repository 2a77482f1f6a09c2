#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace approxcover {

enum class ErrorCode {
  kEmptySet,
  kOverflow,
  kInvalidFold,
  kInvalidSize,
  kBudgetExceeded,
  kNoStabilization,
  kParse,
};

const char* error_code_name(ErrorCode code);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class EmptySetError : public Error {
 public:
  explicit EmptySetError(const std::string& where)
      : Error(ErrorCode::kEmptySet, where + ": empty set") {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& where)
      : Error(ErrorCode::kOverflow, where + ": 64-bit integer overflow") {}
};

class InvalidFoldError : public Error {
 public:
  explicit InvalidFoldError(const std::string& what)
      : Error(ErrorCode::kInvalidFold, what) {}
};

class InvalidSizeError : public Error {
 public:
  explicit InvalidSizeError(const std::string& what)
      : Error(ErrorCode::kInvalidSize, what) {}
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t nodes, std::uint64_t budget)
      : Error(ErrorCode::kBudgetExceeded,
              "node budget exceeded after " + std::to_string(nodes) +
                  " nodes (budget " + std::to_string(budget) + ")"),
        nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

class NoStabilizationError : public Error {
 public:
  explicit NoStabilizationError(const std::string& what)
      : Error(ErrorCode::kNoStabilization, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorCode::kParse, what) {}
};

}  // namespace approxcover
