#include "addchain/modexp.hpp"

#include <string>

#include "addchain/error.hpp"

namespace addchain {

ModContext::ModContext(BigUint base, BigUint modulus)
    : base_(std::move(base)), modulus_(std::move(modulus)) {
  if (modulus_ < 2) {
    throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
  }
  if (base_ < 0) {
    throw Error(ErrorKind::InvalidArgument, "base must be non-negative");
  }
  base_ %= modulus_;
}

ModexpResult execute(const AdditionChain& chain, const ModContext& ctx) {
  ModexpResult result;
  std::vector<BigUint> powers;
  powers.reserve(chain.size());
  powers.push_back(ctx.base());
  for (const Instruction& ins : to_program(chain)) {
    powers.push_back((powers[ins.j] * powers[ins.k]) % ctx.modulus());
    ++result.multiplications;
  }
  result.value = std::move(powers.back());
  return result;
}

ModexpResult execute(std::span<const std::uint64_t> values,
                     std::uint64_t exponent, const ModContext& ctx) {
  const ValidationReport report = validate_chain(values, exponent);
  if (!report.valid()) {
    const Violation& v = report.violations.front();
    throw Error(ErrorKind::InvalidChain,
                std::string(to_string(v.kind)) + " at position " +
                    std::to_string(v.position) + ": " + v.detail);
  }
  return execute(AdditionChain::from_values({values.begin(), values.end()}), ctx);
}

BigUint reference_modexp(const BigUint& base, std::uint64_t exponent,
                         const BigUint& modulus) {
  if (modulus < 2) {
    throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
  }
  const BigUint b = base % modulus;
  BigUint acc = 1;
  for (int bit = 63; bit >= 0; --bit) {
    acc = (acc * acc) % modulus;
    if ((exponent >> bit) & 1U) acc = (acc * b) % modulus;
  }
  return acc;
}

BigUint parse_decimal(std::string_view text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument,
                "expected a non-negative decimal integer, got '" +
                    std::string(text) + "'");
  }
  return BigUint(std::string(text));
}

}  // namespace addchain
