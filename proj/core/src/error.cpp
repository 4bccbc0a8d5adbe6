#include "addchain/error.hpp"

namespace addchain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::NoSummandPair: return "NoSummandPair";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::RadixInvalid: return "RadixInvalid";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace addchain
