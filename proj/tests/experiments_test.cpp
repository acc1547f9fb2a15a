#include <gtest/gtest.h>

#include <cmath>

#include "cookiewalk/experiments.hpp"
#include "cookiewalk/oracle.hpp"
#include "reference.hpp"

namespace cookiewalk {
namespace {

TEST(Wilson, Edges) {
  EXPECT_EQ(wilson_interval(0, 37).first, 0.0);
  EXPECT_EQ(wilson_interval(37, 37).second, 1.0);
  const auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo, 0.4038315303659956, 1e-9);
  EXPECT_NEAR(hi, 0.5961684696340044, 1e-9);
  EXPECT_THROW(wilson_interval(3, 2), std::domain_error);
  EXPECT_THROW(wilson_interval(0, 0), std::domain_error);
}

TEST(Wilson, ShrinksWithReplicas) {
  const auto small = proportion_estimate(30, 100);
  const auto large = proportion_estimate(3000, 10000);
  EXPECT_LE(small.low, small.point);
  EXPECT_LE(small.point, small.high);
  EXPECT_LT(large.high - large.low, small.high - small.low);
}

TEST(MeanAccumulator, MergeIsOrderIndependent) {
  MeanAccumulator a, b, c, all;
  for (int i = 0; i < 10; ++i) {
    (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add(i);
    all.add(i);
  }
  MeanAccumulator ab = a;
  ab.merge(b).merge(c);
  MeanAccumulator cb = c;
  cb.merge(b).merge(a);
  EXPECT_EQ(ab.count(), all.count());
  EXPECT_DOUBLE_EQ(ab.mean(), all.mean());
  EXPECT_DOUBLE_EQ(cb.variance(), all.variance());
}

TEST(RenewalCounts, EmptyBeforeFirstSum) {
  const RenewalLayout layout(0.75, 3, false);
  const auto counts = renewal_counts(layout, layout.right_sum(1));
  EXPECT_EQ(counts.total, 0u);
  EXPECT_THROW(renewal_counts(layout, 0), std::domain_error);
}

TEST(RenewalCounts, PartitionAndBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RenewalLayout layout(0.75, seed, true);
    for (std::int64_t k : {1, 5, 100, 5000}) {
      const auto counts = renewal_counts(layout, k);
      std::uint64_t sum = 0;
      for (const auto& [n, c] : counts.by_exponent) sum += c;
      EXPECT_EQ(sum, counts.total);
      // Scan sites: cookie sites in (0, K) in unshifted coordinates.
      std::uint64_t scanned = 0;
      for (std::int64_t y = 1; y < k; ++y) scanned += layout.is_partial_sum(y);
      EXPECT_EQ(scanned, counts.total);
    }
  }
}

TEST(RenewalCounts, DensityAcrossSeeds) {
  const auto c = derived_constants(0.75);
  constexpr std::int64_t K = 1'000'000;
  double mean_density = 0.0;
  int n2_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RenewalLayout layout(0.75, seed, false);
    const auto counts = renewal_counts(layout, K);
    mean_density += static_cast<double>(counts.total) / K / 100.0;
    n2_ok += static_cast<double>(counts.count(2)) / K >= c.alpha * std::pow(4.0, -1.5);
  }
  EXPECT_NEAR(mean_density, 1.0 / c.expected_gap, 0.05 / c.expected_gap);
  EXPECT_GE(n2_ok, 95);
}

TEST(CrossingTail, SmallGapAgainstOracle) {
  const auto r = estimate_crossing_tail(2, 0.75, 100'000, 1);
  EXPECT_EQ(r.threshold, 16u);
  EXPECT_DOUBLE_EQ(r.dp_tail, 51.0 / 128.0);
  EXPECT_GE(r.estimate.low, r.dp_tail - 0.02);
  EXPECT_GT(r.estimate.low, 0.3);
}

TEST(CrossingTail, LargerGapAboveOracle) {
  const auto r = estimate_crossing_tail(5, 0.75, 2000, 2);
  EXPECT_GE(r.estimate.point, r.dp_tail - 3 * r.estimate.std_error);
  EXPECT_LE(r.estimate.point, 1.0);
  for (const auto& s : r.samples) EXPECT_GE(s.gap, 32);
}

TEST(CrossingTail, ReplicaCountsAgree) {
  const auto a = estimate_crossing_tail(3, 0.75, 100, 5);
  const auto b = estimate_crossing_tail(3, 0.75, 10'000, 5);
  const double se = std::sqrt(a.estimate.std_error * a.estimate.std_error +
                              b.estimate.std_error * b.estimate.std_error);
  EXPECT_LE(std::abs(a.estimate.point - b.estimate.point), 3 * se);
  EXPECT_THROW(estimate_crossing_tail(3, 0.75, 99, 5), std::domain_error);
}

TEST(CrossingTail, AnnealedMatchesQuenched) {
  CrossingTailOptions opts;
  opts.condition = GapCondition::exactly;
  const auto annealed = estimate_crossing_tail(3, 0.75, 20'000, 3, opts);
  const auto quenched = estimate_crossing_tail_quenched(3, 0.75, 20'000, 17, 18, opts);
  for (const auto& s : quenched.samples) ASSERT_EQ(s.gap, 8);
  const double se = std::sqrt(annealed.estimate.std_error * annealed.estimate.std_error +
                              quenched.estimate.std_error * quenched.estimate.std_error);
  EXPECT_LE(std::abs(annealed.estimate.point - quenched.estimate.point), 3 * se);
}

TEST(CrossingTail, RaisingCapNeverLowersNumerator) {
  std::uint64_t prev = 0;
  for (std::uint64_t cap : {64ULL, 640ULL, 6400ULL}) {
    CrossingTailOptions opts;
    opts.step_cap = cap;
    const auto r = estimate_crossing_tail(3, 0.75, 2000, 4, opts);
    EXPECT_GE(r.successes, prev);
    prev = r.successes;
  }
  CrossingTailOptions bad;
  bad.step_cap = 63;
  EXPECT_THROW(estimate_crossing_tail(3, 0.75, 200, 4, bad), std::domain_error);
}

TEST(CrossingTail, ThreadCountDoesNotChangeResult) {
  CrossingTailOptions one, four;
  four.threads = 4;
  const auto a = estimate_crossing_tail(3, 0.75, 500, 8, one);
  const auto b = estimate_crossing_tail(3, 0.75, 500, 8, four);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].time, b.samples[i].time);
}

TEST(TkProfile, RunningMaxIsMonotone) {
  const auto prof = tk_over_k_profile(3, 4, 500, 100'000'000);
  ASSERT_EQ(prof.first_passage.size(), 500u);
  double prev = 0.0;
  for (const auto& pt : prof.first_passage) {
    EXPECT_GE(pt.running_max, prev);
    EXPECT_GE(pt.running_max, pt.ratio);
    prev = pt.running_max;
    if (pt.hitting_time) EXPECT_GE(*pt.hitting_time, static_cast<std::uint64_t>(pt.target));
  }
  for (std::size_t i = 1; i < prof.checkpoints.size(); ++i) {
    EXPECT_GT(prof.checkpoints[i].step, prof.checkpoints[i - 1].step);
    EXPECT_LE(std::abs(prof.checkpoints[i].position), static_cast<Site>(prof.checkpoints[i].step));
  }
}

TEST(TkProfile, CensoredTargetsUseCapLowerBound) {
  const auto prof = tk_over_k_profile(3, 4, 10'000, 1000);
  const auto& last = prof.first_passage.back();
  EXPECT_FALSE(last.hitting_time);
  EXPECT_DOUBLE_EQ(last.ratio, 1000.0 / 10'000.0);
  EXPECT_THROW(tk_over_k_profile(3, 4, 0, 10), std::domain_error);
}

TEST(SpeedEstimate, SymmetricWalkHasZeroSpeed) {
  EnvDescriptor d;
  d.variant = "uniform";
  d.p = 0.5;
  const auto est = speed_estimate(d, 10'000, {100, 1000, 10'000}, 400, 3);
  ASSERT_EQ(est.ratio.size(), 3u);
  for (const auto& e : est.ratio) EXPECT_TRUE(e.contains(0.0)) << e.point;
  EXPECT_THROW(speed_estimate(d, 10, {100}, 4, 3), std::domain_error);
}

TEST(SpeedEstimate, ThreadInvariant) {
  EnvDescriptor d;
  d.variant = "homogeneous";
  d.cookies = 3;
  d.p = 0.75;
  const auto a = speed_estimate(d, 20'000, {1000, 20'000}, 64, 11, 1);
  const auto b = speed_estimate(d, 20'000, {1000, 20'000}, 64, 11, 3);
  EXPECT_EQ(a.final_positions, b.final_positions);
}

TEST(SpeedEstimate, CookieCountOrdersSpeed) {
  double prev = -1.0;
  for (int m : {1, 3, 20}) {
    EnvDescriptor d;
    d.variant = "homogeneous";
    d.cookies = m;
    d.p = 0.75;
    const auto est = speed_estimate(d, 100'000, {100'000}, 100, 21);
    EXPECT_GE(est.ratio.back().point, prev) << m;
    prev = est.ratio.back().point;
  }
}

TEST(BinomialFloor, ExactSummationMatches) {
  for (double k : {0.0, 10.0, 49.5, 50.0, 60.0}) {
    EXPECT_NEAR(binomial_upper_tail(184, 0.3, k),
                reference::binomial_tail_sum(184, 0.3, static_cast<int>(std::ceil(k))), 1e-12)
        << k;
  }
  EXPECT_EQ(binomial_upper_tail(10, 0.3, 11), 0.0);
}

TEST(BinomialFloor, DegenerateThreshold) {
  BinomialFloorOptions opts;
  opts.c = 0.0;
  const auto r = binomial_floor_check(2, 10'000, 20, opts);
  EXPECT_EQ(r.binomial_tail, 1.0);
  EXPECT_EQ(r.empirical.point, 1.0);
}

TEST(BinomialFloor, HoldsWithFloorAndDpBeta) {
  const auto r = binomial_floor_check(2, 10'000, 200);
  EXPECT_EQ(r.trials, 184u);
  EXPECT_NEAR(r.threshold, 50.0, 1e-9);
  EXPECT_NEAR(r.binomial_tail, reference::binomial_tail_sum(184, 0.3, 50), 1e-12);
  EXPECT_TRUE(r.holds()) << r.empirical.point << " vs " << r.binomial_tail;

  BinomialFloorOptions tight;
  tight.beta = dp_first_passage_reflected(4, 16).tail_at(16);
  const auto t = binomial_floor_check(2, 10'000, 200, tight);
  EXPECT_GE(t.binomial_tail, r.binomial_tail);
  EXPECT_TRUE(t.holds()) << t.empirical.point << " vs " << t.binomial_tail;
}

TEST(BinomialFloor, RejectsEmptyBinomial) {
  EXPECT_THROW(binomial_floor_check(2, 0, 10), std::domain_error);
}

}  // namespace
}  // namespace cookiewalk
