#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace addchain {

enum class ErrorKind {
  InvalidArgument,
  InvalidChain,
  NoSummandPair,
  NonTermination,
  ConfigInvalid,
  RadixInvalid,
  BudgetExceeded,
  CacheCorrupt,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace addchain
