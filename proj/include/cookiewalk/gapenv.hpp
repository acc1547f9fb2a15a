#pragma once

// Gap law, renewal layout and cookie environments.
//
// The counterexample environment places infinitely many cookies on the
// partial sums of i.i.d. gaps Z_j (to the right of the origin) and Z^-_j (to
// the left), and none anywhere else. Gaps take the values 2^k, k >= 2, with
// P(Z = 2^k) proportional to 4^{-eps k}. The whole picture is then shifted
// right by U, uniform on {0, ..., |Z^-_1| - 1}.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cookiewalk/rng.hpp"

namespace cookiewalk {

using Site = std::int64_t;

double gamma_of_epsilon(double epsilon);

class GapDistribution {
 public:
  explicit GapDistribution(double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  /// Normalizer (sum_{k>=2} 4^{-eps k})^{-1}.
  double gamma() const noexcept { return gamma_; }
  /// r = 4^{-eps}; P(Z = 2^k) = (1 - r) r^{k-2}.
  double ratio() const noexcept { return ratio_; }

  /// P(Z = 2^exponent); zero for exponent < 2.
  double pmf(int exponent) const;
  /// P(Z >= 2^exponent).
  double tail(int exponent) const;
  /// E[Z] = 4(1 - r)/(1 - 2r).
  double expected_gap() const noexcept;

  /// Exponent k of the gap 2^k encoded by a uniform draw in (0, 1].
  /// k = 2 + floor(log u / log r), i.e. two plus a geometric variable.
  int exponent_from_uniform(double u) const noexcept;

  std::int64_t sample(Stream& rng) const;

 private:
  double epsilon_;
  double gamma_;
  double ratio_;
  double log_ratio_;
};

enum class Side : std::uint8_t { right = 0, left = 1 };

// Partial sums of the right and left gap sequences plus the shift. Gaps are
// pure functions of (env_seed, side, index); sums are extended on demand and
// the object is safe to query from several threads.
class RenewalLayout {
 public:
  RenewalLayout(double epsilon, std::uint64_t env_seed, bool draw_shift);
  struct FixedShift {
    std::int64_t value;
  };
  /// Explicit shift; must lie in {0, ..., |Z^-_1| - 1}.
  RenewalLayout(double epsilon, std::uint64_t env_seed, FixedShift shift);

  RenewalLayout(const RenewalLayout&) = delete;
  RenewalLayout& operator=(const RenewalLayout&) = delete;

  const GapDistribution& distribution() const noexcept { return dist_; }
  std::uint64_t env_seed() const noexcept { return env_seed_; }
  std::int64_t shift() const noexcept { return shift_; }

  /// Z_index (right) or |Z^-_index| (left), index >= 1. Never touches the cache.
  std::int64_t gap(Side side, std::size_t index) const;

  /// S_index = Z_1 + ... + Z_index; index 0 gives 0. Left sums are negative.
  std::int64_t right_sum(std::size_t index) const;
  std::int64_t left_sum(std::size_t index) const;

  /// Number of right partial sums currently cached.
  std::size_t materialized_right() const;

  /// Cookie test in unshifted coordinates (0 and every partial sum).
  bool is_partial_sum(std::int64_t y) const;

  /// Consecutive partial sums (a, b) with a <= y < b, unshifted coordinates.
  std::pair<std::int64_t, std::int64_t> enclosing_sums(std::int64_t y) const;

  /// Index l >= 1 of the first right gap satisfying the predicate on exponents.
  template <class Pred>
  std::size_t find_right_gap(Pred&& pred, std::size_t from = 1) const {
    for (std::size_t j = from;; ++j) {
      if (pred(exponent_of(gap(Side::right, j)))) {
        right_sum(j);
        return j;
      }
    }
  }

  static int exponent_of(std::int64_t gap) noexcept;

 private:
  void extend_until(Side side, std::int64_t magnitude) const;
  void extend_to_index(Side side, std::size_t index) const;
  std::int64_t sum_at(Side side, std::size_t index) const;

  GapDistribution dist_;
  std::uint64_t env_seed_;
  std::int64_t shift_ = 0;

  // sums_[side][i] = |S_{i+1}|, strictly increasing.
  mutable std::vector<std::int64_t> sums_[2];
  mutable std::shared_mutex mutex_;
};

/// Builds a layout; with draw_shift the shift is uniform on {0, ..., |Z^-_1| - 1}.
std::shared_ptr<const RenewalLayout> build_layout(double epsilon, std::uint64_t env_seed,
                                                  bool draw_shift);

struct Homogeneous {
  int cookies = 0;  // M
  double p = 0.5;
};

struct Counterexample {
  std::shared_ptr<const RenewalLayout> layout;
  double p = 0.5;
};

// Same right-jump probability at every site and visit. Used for the
// symmetric baseline and degenerate test cases.
struct Uniform {
  double p = 0.5;
};

class CookieEnvironment {
 public:
  using Variant = std::variant<Homogeneous, Counterexample, Uniform>;

  static CookieEnvironment homogeneous(int cookies, double p);
  static CookieEnvironment counterexample(std::shared_ptr<const RenewalLayout> layout, double p);
  static CookieEnvironment uniform(double p);

  /// Right-jump probability on the visit-th visit (visit >= 1) to the site.
  double probability(Site site, std::uint64_t visit) const;

  bool is_cookie_site(Site site) const;

  const Variant& variant() const noexcept { return variant_; }
  double bias() const noexcept;

 private:
  explicit CookieEnvironment(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

inline double probability_at(const CookieEnvironment& env, Site site, std::uint64_t visit) {
  return env.probability(site, visit);
}

struct SiteRecord {
  Site site;
  bool is_cookie_site;
};

std::vector<SiteRecord> window_dump(const CookieEnvironment& env, Site lo, Site hi);

// Flat key-value description of an environment:
// variant, p, and M (homogeneous) or epsilon, env_seed, shift_u (counterexample).
struct EnvDescriptor {
  std::string variant = "counterexample";
  double p = 0.75;
  std::optional<int> cookies;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> env_seed;
  std::optional<std::int64_t> shift_u;
  bool draw_shift = true;

  std::map<std::string, std::string> to_kv() const;
  static EnvDescriptor from_kv(const std::map<std::string, std::string>& kv);
  std::string to_string() const;
  static EnvDescriptor parse(const std::string& text);

  /// Fills env_seed from the argument when unset.
  CookieEnvironment build(std::uint64_t fallback_seed = 1) const;
};

}  // namespace cookiewalk
