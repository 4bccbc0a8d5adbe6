#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace addchain {

/// Mixes an arbitrary list of 64-bit words into one seed (splitmix64
/// finalizer chained over the inputs). Used to derive per-run and
/// per-exponent seeds from a master seed.
std::uint64_t hash64(std::initializer_list<std::uint64_t> words) noexcept;

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the helpers below avoid the
/// implementation-defined std distributions so runs are bit-identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be non-zero.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi], inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace addchain
