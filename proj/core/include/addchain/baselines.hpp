#pragma once

#include <cstdint>

#include "addchain/chain.hpp"

namespace addchain {

/// Radix of the m-ary method: a power of two, at least 2.
class Radix {
 public:
  /// Throws Error(RadixInvalid).
  explicit Radix(std::uint32_t m);

  std::uint32_t value() const noexcept { return m_; }
  /// log2(m): doublings per digit.
  int bits() const noexcept;

 private:
  std::uint32_t m_;
};

/// Left-to-right square-and-multiply chain.
AdditionChain binary_chain(std::uint64_t exponent);

/// floor(log2 e) + popcount(e) - 1.
ChainLength binary_length(std::uint64_t exponent);

/// Left-to-right m-ary chain. Precomputes 2, 3, ..., d by successive +1
/// steps, where d is the largest base-m digit after the leading one; a larger
/// leading digit is reached by doubling if it is a power of two and by more
/// +1 steps otherwise. Digits are then processed most significant first.
AdditionChain mary_chain(std::uint64_t exponent, Radix radix);

}  // namespace addchain
