#include "addchain/chain.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "addchain/error.hpp"

namespace addchain {

AdditionChain AdditionChain::from_values(std::vector<std::uint64_t> values) {
  if (values.empty() || values.front() != 1) {
    throw Error(ErrorKind::InvalidChain, "chain must start with 1");
  }
  std::vector<Step> steps;
  steps.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw Error(ErrorKind::InvalidChain,
                  "chain is not strictly increasing at position " +
                      std::to_string(i + 1));
    }
    try {
      steps.push_back(decompose_step(values, i));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidChain, e.what());
    }
  }
  return AdditionChain(std::move(values), std::move(steps));
}

AdditionChain::AdditionChain(std::vector<std::uint64_t> values,
                             std::vector<Step> steps)
    : values_(std::move(values)), steps_(std::move(steps)) {
  if (values_.empty() || values_.front() != 1) {
    throw Error(ErrorKind::InvalidChain, "chain must start with 1");
  }
  if (steps_.size() + 1 != values_.size()) {
    throw Error(ErrorKind::InvalidChain, "step count does not match values");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const Step s = steps_[i - 1];
    if (values_[i] <= values_[i - 1]) {
      throw Error(ErrorKind::InvalidChain,
                  "chain is not strictly increasing at position " +
                      std::to_string(i + 1));
    }
    if (s.j > s.k || s.k >= i || values_[s.j] + values_[s.k] != values_[i]) {
      throw Error(ErrorKind::InvalidChain,
                  "step does not produce the value at position " +
                      std::to_string(i + 1));
    }
  }
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::NotOneAtStart: return "NOT_ONE_AT_START";
    case ViolationKind::NotIncreasing: return "NOT_INCREASING";
    case ViolationKind::NoSummandPair: return "NO_SUMMAND_PAIR";
    case ViolationKind::Overshoot: return "OVERSHOOT";
    case ViolationKind::WrongTerminal: return "WRONG_TERMINAL";
  }
  return "UNKNOWN";
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
  return find(kind) != nullptr;
}

const Violation* ValidationReport::find(ViolationKind kind) const noexcept {
  for (const auto& v : violations) {
    if (v.kind == kind) return &v;
  }
  return nullptr;
}

ValidationReport validate_chain(std::span<const std::uint64_t> values,
                                std::uint64_t exponent) {
  ValidationReport report;
  auto add = [&](std::size_t position, ViolationKind kind, std::string detail) {
    if (!report.has(kind)) {
      report.violations.push_back({position, kind, std::move(detail)});
    }
  };

  if (values.empty()) {
    add(1, ViolationKind::NotOneAtStart, "chain is empty");
    add(1, ViolationKind::WrongTerminal,
        "chain is empty, expected " + std::to_string(exponent));
    return report;
  }
  if (values[0] != 1) {
    add(1, ViolationKind::NotOneAtStart,
        "first value is " + std::to_string(values[0]));
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(values.size() * 2);
  seen.insert(values[0]);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t v = values[i];
    if (v > exponent) {
      add(i + 1, ViolationKind::Overshoot,
          std::to_string(v) + " exceeds exponent " + std::to_string(exponent));
    }
    if (i == 0) continue;
    if (v <= values[i - 1]) {
      add(i + 1, ViolationKind::NotIncreasing,
          std::to_string(v) + " follows " + std::to_string(values[i - 1]));
    }
    bool found = false;
    for (std::size_t j = 0; j < i && !found; ++j) {
      found = values[j] <= v && seen.contains(v - values[j]);
    }
    if (!found) {
      add(i + 1, ViolationKind::NoSummandPair,
          std::to_string(v) + " is not a sum of two earlier values");
    }
    seen.insert(v);
  }
  if (values.back() != exponent) {
    add(values.size(), ViolationKind::WrongTerminal,
        "last value is " + std::to_string(values.back()) + ", expected " +
            std::to_string(exponent));
  }
  return report;
}

Step decompose_step(std::span<const std::uint64_t> values, std::size_t i) {
  if (i == 0 || i >= values.size()) {
    throw Error(ErrorKind::InvalidArgument, "step index out of range");
  }
  const std::uint64_t target = values[i];
  for (std::size_t k = i; k-- > 0;) {
    if (values[k] > target) continue;
    const std::uint64_t want = target - values[k];
    for (std::size_t j = k + 1; j-- > 0;) {
      if (values[j] == want) {
        return {static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)};
      }
    }
  }
  throw Error(ErrorKind::NoSummandPair,
              "no summand pair for " + std::to_string(target) +
                  " at position " + std::to_string(i + 1));
}

std::vector<Instruction> to_program(const AdditionChain& chain) {
  std::vector<Instruction> program;
  program.reserve(chain.additions());
  const auto steps = chain.steps();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Step s = steps[i - 1];
    program.push_back({static_cast<std::uint32_t>(i), s.j, s.k});
  }
  return program;
}

std::vector<std::uint64_t> replay_program(
    std::span<const Instruction> program) {
  std::vector<std::uint64_t> powers{1};
  powers.reserve(program.size() + 1);
  for (const auto& ins : program) {
    if (ins.target != powers.size() || ins.j >= ins.target ||
        ins.k >= ins.target) {
      throw Error(ErrorKind::InvalidArgument, "malformed program");
    }
    powers.push_back(powers[ins.j] + powers[ins.k]);
  }
  return powers;
}

int floor_log2(std::uint64_t x) noexcept {
  return x == 0 ? -1 : 63 - std::countl_zero(x);
}

int ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0 : 64 - std::countl_zero(x - 1);
}

ChainLength lower_bound(std::uint64_t exponent) {
  if (exponent == 0) {
    throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  }
  return static_cast<ChainLength>(floor_log2(exponent) +
                                  ceil_log2(std::popcount(exponent)));
}

std::vector<std::uint64_t> parse_chain_text(std::string_view text) {
  std::vector<std::uint64_t> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    const auto first = line.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::size_t pos = first;
    while (pos < line.size()) {
      pos = line.find_first_not_of(" \t\r\f\v", pos);
      if (pos == std::string_view::npos) break;
      auto end = line.find_first_of(" \t\r\f\v", pos);
      if (end == std::string_view::npos) end = line.size();
      const std::string_view token = line.substr(pos, end - pos);
      std::uint64_t v = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "line " + std::to_string(line_no) + ": bad integer '" +
                        std::string(token) + "'");
      }
      values.push_back(v);
      pos = end;
    }
  }
  return values;
}

std::vector<std::uint64_t> read_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_chain_text(buf.str());
}

std::string format_values(std::span<const std::uint64_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace addchain
