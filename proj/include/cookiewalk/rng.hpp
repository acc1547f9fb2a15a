#pragma once

// Counter-based seeding and a small sequential stream.
//
// Every random quantity in the toolkit is addressed by a tuple of integers
// (seed, tag, index...). Hashing the tuple through SplitMix64 gives values
// that do not depend on the order in which they are requested, so lazily
// materialized environments and parallel replicas stay bit-reproducible.

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace cookiewalk {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hash a seed together with any number of integer coordinates.
template <class It>
constexpr std::uint64_t derive_seed(std::uint64_t seed, It first, It last) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (; first != last; ++first) {
    h = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(*first) + 0x3c6ef372fe94f82bULL));
  }
  return h;
}

inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::initializer_list<std::uint64_t> coords) noexcept {
  return derive_seed(seed, coords.begin(), coords.end());
}

/// Uniform double in (0, 1] built from the top 53 bits.
inline constexpr double to_unit_open_closed(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Uniform double in [0, 1).
inline constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// SplitMix64 sequential stream. Satisfies UniformRandomBitGenerator, but the
// toolkit never hands it to <random> distributions: their output is
// implementation-defined and would break cross-platform reproducibility.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept { return to_unit((*this)()); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Independent child stream, e.g. one per replica.
  static Stream derive(std::uint64_t master, std::uint64_t index) noexcept {
    return Stream(derive_seed(master, {index}));
  }

 private:
  std::uint64_t state_;
};

}  // namespace cookiewalk
