#include "addchain/baselines.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "addchain/error.hpp"

namespace addchain {
namespace {

void require_exponent(std::uint64_t e) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
}

// Appends last + values[partner] and records the step.
void push_sum(std::vector<std::uint64_t>& values, std::vector<Step>& steps,
              std::uint32_t a, std::uint32_t b) {
  steps.push_back({std::min(a, b), std::max(a, b)});
  values.push_back(values[a] + values[b]);
}

}  // namespace

Radix::Radix(std::uint32_t m) : m_(m) {
  if (m < 2 || !std::has_single_bit(m)) {
    throw Error(ErrorKind::RadixInvalid,
                "radix must be a power of two >= 2, got " + std::to_string(m));
  }
}

int Radix::bits() const noexcept { return std::countr_zero(m_); }

AdditionChain binary_chain(std::uint64_t exponent) {
  require_exponent(exponent);
  std::vector<std::uint64_t> values{1};
  std::vector<Step> steps;
  for (int bit = floor_log2(exponent) - 1; bit >= 0; --bit) {
    const auto last = static_cast<std::uint32_t>(values.size() - 1);
    push_sum(values, steps, last, last);
    if ((exponent >> bit) & 1U) {
      push_sum(values, steps, 0, last + 1);
    }
  }
  return AdditionChain(std::move(values), std::move(steps));
}

ChainLength binary_length(std::uint64_t exponent) {
  require_exponent(exponent);
  return static_cast<ChainLength>(floor_log2(exponent) +
                                  std::popcount(exponent) - 1);
}

AdditionChain mary_chain(std::uint64_t exponent, Radix radix) {
  require_exponent(exponent);
  const int k = radix.bits();
  const std::uint64_t m = radix.value();

  std::vector<std::uint64_t> digits;  // most significant first
  for (std::uint64_t rest = exponent; rest != 0; rest /= m) {
    digits.push_back(rest % m);
  }
  std::reverse(digits.begin(), digits.end());
  // Precomputed table 1, 2, ..., top where top is the largest digit after
  // the leading one. A larger leading digit extends the table: by doubling
  // when it is a power of two, otherwise by further +1 steps.
  std::uint64_t top = 1;
  for (std::size_t pos = 1; pos < digits.size(); ++pos) top = std::max(top, digits[pos]);

  std::vector<std::uint64_t> values{1};
  std::vector<Step> steps;
  auto append = [&](std::uint32_t j, std::uint32_t k) {
    push_sum(values, steps, j, k);
    return static_cast<std::uint32_t>(values.size() - 1);
  };
  for (std::uint64_t d = 2; d <= top; ++d) {
    append(0, static_cast<std::uint32_t>(values.size() - 1));
  }

  // values stays strictly increasing, so lookups can binary search.
  auto find = [&](std::uint64_t v) -> std::optional<std::uint32_t> {
    const auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return std::nullopt;
    return static_cast<std::uint32_t>(it - values.begin());
  };

  const std::uint64_t lead = digits.front();
  if (lead > top) {
    if (std::has_single_bit(lead)) {
      auto at = static_cast<std::uint32_t>(std::bit_floor(top) - 1);
      while (values[at] < lead) at = append(at, at);
    } else {
      while (values.back() < lead) append(0, static_cast<std::uint32_t>(values.size() - 1));
    }
  }

  std::uint32_t current = *find(lead);
  for (std::size_t pos = 1; pos < digits.size(); ++pos) {
    for (int b = 0; b < k; ++b) {
      if (const auto known = find(2 * values[current])) {
        current = *known;
        continue;
      }
      current = append(current, current);
    }
    if (digits[pos] != 0) current = append(*find(digits[pos]), current);
  }
  return AdditionChain(std::move(values), std::move(steps));
}

}  // namespace addchain
