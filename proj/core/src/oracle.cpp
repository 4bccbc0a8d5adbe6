#include "addchain/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <numeric>

#include "addchain/baselines.hpp"
#include "parallel.hpp"

namespace addchain {
namespace {

constexpr std::size_t kMaxDepth = 130;  // l(n) <= 2 * 64 for 64-bit n
constexpr char kCacheMagic[4] = {'A', 'C', 'O', 'T'};
constexpr std::uint32_t kCacheVersion = 1;

// Depth-limited search for a chain of exactly `depth` additions.
class DepthSearch {
 public:
  DepthSearch(std::uint64_t target, std::size_t depth, std::uint64_t budget,
              std::uint64_t& nodes)
      : target_(target), depth_(depth), budget_(budget), nodes_(nodes) {
    // need_[i]: smallest value position i may hold and still reach the
    // target by doubling alone.
    need_[depth_] = target_;
    for (std::size_t i = depth_; i-- > 0;) {
      need_[i] = need_[i + 1] / 2 + (need_[i + 1] & 1U);
    }
    chain_[0] = 1;
    candidates_.resize(depth_);
    for (std::size_t i = 0; i < depth_; ++i) {
      candidates_[i].resize((i + 1) * (i + 2) / 2);
    }
  }

  /// True if found; chain() then holds the witness.
  bool run() {
    if (target_ == 1) {
      length_ = 1;
      return true;
    }
    return descend(0);
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::vector<std::uint64_t> chain() const {
    return {chain_.begin(), chain_.begin() + static_cast<std::ptrdiff_t>(length_)};
  }

 private:
  // Is `value` a sum of two elements of chain_[0..last]?
  bool pair_sum(std::size_t last, std::uint64_t value) const {
    std::size_t lo = 0;
    std::size_t hi = last;
    while (lo <= hi) {
      const std::uint64_t a = chain_[lo];
      const std::uint64_t b = chain_[hi];
      if (a > value || b > value - a) {
        if (hi == 0) break;
        --hi;
      } else if (a + b == value) {
        return true;
      } else {
        ++lo;
      }
    }
    return false;
  }

  bool contains(std::size_t last, std::uint64_t value) const {
    return std::binary_search(chain_.begin(), chain_.begin() + last + 1, value);
  }

  bool finish_at(std::size_t pos) {
    chain_[pos] = target_;
    length_ = pos + 1;
    return true;
  }

  bool descend(std::size_t i) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (i + 1 == depth_) {
      return pair_sum(i, target_) && finish_at(i + 1);
    }

    const std::uint64_t floor_value = std::max(chain_[i] + 1, need_[i + 1]);
    const bool penultimate = i + 2 == depth_;
    const bool target_ready = penultimate && pair_sum(i, target_);

    // Star steps first (last element plus each earlier one, largest first),
    // then the remaining pair sums in descending order.
    std::uint64_t* cands = candidates_[i].data();
    std::size_t star_count = 0;
    const std::uint64_t last = chain_[i];
    for (std::size_t j = i + 1; j-- > 0;) {
      if (chain_[j] > target_ - last) continue;
      const std::uint64_t s = last + chain_[j];
      if (s < floor_value) break;
      cands[star_count++] = s;
    }
    std::size_t count = star_count;
    for (std::size_t k = i; k-- > 0;) {
      if (2 * chain_[k] < floor_value) break;
      for (std::size_t j = k + 1; j-- > 0;) {
        if (chain_[j] > target_ - chain_[k]) continue;
        const std::uint64_t s = chain_[k] + chain_[j];
        if (s < floor_value) break;
        cands[count++] = s;
      }
    }
    std::sort(cands + star_count, cands + count, std::greater<>());
    count = static_cast<std::size_t>(
        std::unique(cands + star_count, cands + count) - cands);

    for (std::size_t c = 0; c < count; ++c) {
      const std::uint64_t s = cands[c];
      if (c >= star_count &&
          std::binary_search(cands, cands + star_count, s, std::greater<>())) {
        continue;
      }
      if (s == target_) return finish_at(i + 1);
      if (penultimate && !target_ready) {
        const std::uint64_t rest = target_ - s;
        if (rest != s && !contains(i, rest)) continue;
      }
      chain_[i + 1] = s;
      if (descend(i + 1)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  std::uint64_t target_;
  std::size_t depth_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  bool exhausted_ = false;
  std::size_t length_ = 0;
  std::array<std::uint64_t, kMaxDepth + 1> chain_{};
  std::array<std::uint64_t, kMaxDepth + 1> need_{};
  // Per-depth candidate buffers; depth i holds at most (i+1)(i+2)/2 sums.
  std::vector<std::vector<std::uint64_t>> candidates_;
};

std::uint64_t fnv1a(const unsigned char* data, std::size_t size,
                    std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<unsigned char>(value >> (8 * b)));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<T>(p[b]) << (8 * b);
  }
  return value;
}

}  // namespace

OracleResult search_optimal(std::uint64_t exponent, std::uint64_t node_budget) {
  if (exponent == 0) {
    throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  }
  OracleResult result;
  if (exponent == 1) return result;

  // The m-ary and binary chains bound the depth from above.
  AdditionChain upper = binary_chain(exponent);
  if (AdditionChain q = mary_chain(exponent, Radix(4)); q.additions() < upper.additions()) {
    upper = std::move(q);
  }

  for (std::size_t depth = lower_bound(exponent); depth < upper.additions(); ++depth) {
    DepthSearch search(exponent, depth, node_budget, result.nodes);
    if (search.run()) {
      result.chain = AdditionChain::from_values(search.chain());
      return result;
    }
    if (search.exhausted()) {
      result.chain = std::move(upper);
      result.proven = false;
      return result;
    }
  }
  result.chain = std::move(upper);
  return result;
}

BudgetExceeded::BudgetExceeded(OracleResult best_found)
    : Error(ErrorKind::BudgetExceeded,
            "node budget exhausted; best chain found has " +
                std::to_string(best_found.length()) + " additions"),
      best_(std::move(best_found)) {}

ChainLength optimal_length(std::uint64_t exponent, std::uint64_t node_budget) {
  return optimal_chain(exponent, node_budget).additions();
}

AdditionChain optimal_chain(std::uint64_t exponent, std::uint64_t node_budget) {
  OracleResult r = search_optimal(exponent, node_budget);
  if (!r.proven) throw BudgetExceeded(std::move(r));
  return std::move(r.chain);
}

std::uint64_t OptimalTable::accumulated(std::uint64_t range_max) const {
  if (range_max > limit()) {
    throw Error(ErrorKind::InvalidArgument, "range exceeds table limit");
  }
  return std::accumulate(lengths_.begin(),
                         lengths_.begin() + static_cast<std::ptrdiff_t>(range_max),
                         std::uint64_t{0});
}

OptimalTable compute_optimal_table(std::uint64_t limit, unsigned workers) {
  if (limit == 0) throw Error(ErrorKind::InvalidArgument, "limit must be >= 1");
  std::vector<std::uint16_t> lengths(limit);
  detail::parallel_for(limit, workers, [&](std::size_t i) {
    lengths[i] = static_cast<std::uint16_t>(search_optimal(i + 1).length());
  });
  return OptimalTable(std::move(lengths));
}

void write_table_cache(const OptimalTable& table,
                       const std::filesystem::path& path) {
  std::vector<unsigned char> bytes(std::begin(kCacheMagic), std::end(kCacheMagic));
  put_le<std::uint32_t>(bytes, kCacheVersion);
  put_le<std::uint64_t>(bytes, table.limit());
  for (std::uint16_t v : table.lengths()) put_le<std::uint16_t>(bytes, v);
  put_le<std::uint64_t>(bytes, fnv1a(bytes.data(), bytes.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

OptimalTable read_table_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  constexpr std::size_t kHeader = 4 + 4 + 8;
  auto corrupt = [&](const char* why) {
    return Error(ErrorKind::CacheCorrupt, path.string() + ": " + why);
  };
  if (bytes.size() < kHeader + 8 ||
      std::memcmp(bytes.data(), kCacheMagic, 4) != 0) {
    throw corrupt("bad magic");
  }
  if (get_le<std::uint32_t>(bytes.data() + 4) != kCacheVersion) {
    throw corrupt("unsupported version");
  }
  const auto limit = get_le<std::uint64_t>(bytes.data() + 8);
  if (limit == 0 || (bytes.size() - kHeader - 8) / 2 != limit ||
      (bytes.size() - kHeader - 8) % 2 != 0) {
    throw corrupt("size mismatch");
  }
  const std::size_t body = kHeader + 2 * limit;
  if (get_le<std::uint64_t>(bytes.data() + body) != fnv1a(bytes.data(), body)) {
    throw corrupt("checksum mismatch");
  }
  std::vector<std::uint16_t> lengths(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    lengths[i] = get_le<std::uint16_t>(bytes.data() + kHeader + 2 * i);
  }
  return OptimalTable(std::move(lengths));
}

OptimalTable optimal_table(std::uint64_t limit,
                           const std::optional<std::filesystem::path>& cache_path,
                           unsigned workers) {
  if (limit == 0) throw Error(ErrorKind::InvalidArgument, "limit must be >= 1");
  if (cache_path && std::filesystem::exists(*cache_path)) {
    try {
      OptimalTable cached = read_table_cache(*cache_path);
      if (cached.limit() >= limit) {
        std::vector<std::uint16_t> head(cached.lengths().begin(),
                                        cached.lengths().begin() +
                                            static_cast<std::ptrdiff_t>(limit));
        return OptimalTable(std::move(head));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CacheCorrupt) throw;
    }
  }
  OptimalTable table = compute_optimal_table(limit, workers);
  if (cache_path) write_table_cache(table, *cache_path);
  return table;
}

}  // namespace addchain
