#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "addchain/chain.hpp"

namespace addchain {

using BigUint = boost::multiprecision::cpp_int;

/// Base and modulus for c = p^e mod N. The base is reduced on construction.
class ModContext {
 public:
  /// Throws Error(InvalidArgument) if modulus < 2 or base is negative.
  ModContext(BigUint base, BigUint modulus);

  const BigUint& base() const noexcept { return base_; }
  const BigUint& modulus() const noexcept { return modulus_; }

 private:
  BigUint base_;
  BigUint modulus_;
};

struct ModexpResult {
  BigUint value;
  std::uint64_t multiplications = 0;
};

/// Evaluates the chain as a straight-line program of modular products,
/// keeping every intermediate power. Squarings count as multiplications.
ModexpResult execute(const AdditionChain& chain, const ModContext& ctx);

/// Validates `values` for `exponent` first; throws Error(InvalidChain).
ModexpResult execute(std::span<const std::uint64_t> values,
                     std::uint64_t exponent, const ModContext& ctx);

/// Left-to-right square-and-multiply. Independent of the chain machinery.
BigUint reference_modexp(const BigUint& base, std::uint64_t exponent,
                         const BigUint& modulus);

/// Parses a non-negative decimal integer; throws Error(InvalidArgument).
BigUint parse_decimal(std::string_view text);

}  // namespace addchain
