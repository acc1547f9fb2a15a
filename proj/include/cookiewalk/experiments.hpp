#pragma once

// Statistical harness connecting simulation and exact references.
//
// All experiments derive per-replica streams from a master seed as
// derive_seed(seed, {replica, role}), so results are independent of the
// number of worker threads.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cookiewalk/gapenv.hpp"
#include "cookiewalk/stats.hpp"

namespace cookiewalk {

/// Size condition on the gap whose crossing is timed.
enum class GapCondition { at_least, exactly };

struct CrossingTailOptions {
  double epsilon = 0.75;
  std::uint64_t step_cap = 0;  // 0: 100 * 4^n
  GapCondition condition = GapCondition::at_least;
  unsigned threads = 1;
};

struct CrossingSample {
  std::int64_t gap = 0;
  std::optional<std::uint64_t> time;  // nullopt: censored
};

struct CrossingTail {
  int exponent = 0;
  double p = 0.0;
  std::uint64_t threshold = 0;  // 4^n
  std::uint64_t step_cap = 0;
  std::uint64_t successes = 0;  // crossing time > threshold (censored runs included)
  std::uint64_t censored = 0;
  EstimateCI estimate;
  /// P(T_{2^n} >= 4^n) for the reflected walk.
  double dp_tail = 0.0;
  std::vector<CrossingSample> samples;
};

/// Annealed estimate of P(crossing time of a gap of size 2^n > 4^n): each
/// replica draws a fresh environment and times the first gap meeting the condition.
CrossingTail estimate_crossing_tail(int exponent, double p, std::uint64_t replicas,
                                    std::uint64_t seed, const CrossingTailOptions& opts = {});

/// Quenched counterpart: the first `gaps` matching gaps of one environment.
CrossingTail estimate_crossing_tail_quenched(int exponent, double p, std::uint64_t gaps,
                                             std::uint64_t env_seed, std::uint64_t walk_seed,
                                             const CrossingTailOptions& opts = {});

struct RenewalCounts {
  std::int64_t horizon = 0;
  std::uint64_t total = 0;                    // N(K)
  std::map<int, std::uint64_t> by_exponent;   // n -> N_n(K)

  std::uint64_t count(int exponent) const;
};

/// Counts gaps l >= 1 with S_l < K, in unshifted coordinates.
RenewalCounts renewal_counts(const RenewalLayout& layout, std::int64_t horizon);

struct SpeedCheckpoint {
  std::uint64_t step;
  Site position;
  double ratio;
};

struct PassagePoint {
  std::int64_t target;
  std::optional<std::uint64_t> hitting_time;
  double ratio;        // T_K / K, or step_cap / K when censored
  double running_max;  // max over K' <= K
};

struct SpeedProfile {
  std::vector<SpeedCheckpoint> checkpoints;
  std::vector<PassagePoint> first_passage;

  /// Running max of T_K / K at K = target (1-based).
  double running_max_at(std::int64_t target) const;
};

struct ProfileOptions {
  double epsilon = 0.75;
  double p = 0.75;
  bool draw_shift = true;
};

/// One quenched walk in the counterexample environment, recording T_K for
/// K = 1..k_max and position checkpoints at powers of two.
SpeedProfile tk_over_k_profile(std::uint64_t env_seed, std::uint64_t walk_seed, std::int64_t k_max,
                               std::uint64_t step_cap, const ProfileOptions& opts = {});

struct SpeedEstimate {
  std::vector<std::uint64_t> checkpoints;
  std::vector<EstimateCI> ratio;     // Y_n / n per checkpoint
  std::vector<EstimateCI> positive;  // P(Y_n > 0) per checkpoint
  EstimateCI positive_fraction;      // positive.back()
  std::vector<Site> final_positions;
};

/// Mean of Y_n / n over replicas. A counterexample descriptor without env_seed
/// draws a new environment per replica; otherwise the environment is fixed.
SpeedEstimate speed_estimate(const EnvDescriptor& env, std::uint64_t steps,
                             const std::vector<std::uint64_t>& checkpoints, std::uint64_t replicas,
                             std::uint64_t seed, unsigned threads = 1);

struct BinomialFloorOptions {
  double epsilon = 0.75;
  double p = 0.75;
  double c = 0.04;
  /// Success probability of the comparison binomial; defaults to the 0.3 floor.
  std::optional<double> beta;
  std::uint64_t seed = 1;
  std::uint64_t step_cap = 0;  // 0: 100 * 4^n
  unsigned threads = 1;
};

struct BinomialFloorReport {
  int exponent = 0;
  std::int64_t horizon = 0;
  std::uint64_t trials = 0;  // ceil(alpha K 4^{-eps n} / 2)
  double threshold = 0.0;    // c K / 4^{eps n}
  double beta = 0.0;
  double binomial_tail = 0.0;  // P(Bin(trials, beta) >= threshold)
  EstimateCI empirical;        // P(slow crossings >= threshold)
  std::vector<std::uint64_t> slow_counts;
  std::uint64_t short_replicas = 0;  // fewer than `trials` gaps of size 2^n below K

  bool holds() const noexcept { return empirical.point >= binomial_tail - 3.0 * empirical.std_error; }
};

/// Counts slow crossings (> 4^n steps) among the first `trials` gaps of size
/// 2^n below K and compares with the binomial lower bound.
BinomialFloorReport binomial_floor_check(int exponent, std::int64_t horizon,
                                         std::uint64_t replicas, const BinomialFloorOptions& opts = {});

/// P(Bin(trials, prob) >= k) for real k.
double binomial_upper_tail(std::uint64_t trials, double prob, double k);

}  // namespace cookiewalk
