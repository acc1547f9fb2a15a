#include "cookiewalk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

#include "cookiewalk/oracle.hpp"
#include "cookiewalk/parallel.hpp"
#include "cookiewalk/walker.hpp"

namespace cookiewalk {

namespace {

enum StreamRole : std::uint64_t { kEnvironment = 0, kWalk = 1 };

std::uint64_t crossing_threshold(int exponent) {
  if (exponent < 2 || exponent > 30) throw std::domain_error("gap exponent must lie in [2, 30]");
  return std::uint64_t{1} << (2 * exponent);
}

std::uint64_t resolve_cap(std::uint64_t requested, std::uint64_t threshold) {
  const std::uint64_t cap = requested == 0 ? 100 * threshold : requested;
  // A censored run then certainly exceeds the threshold.
  if (cap < threshold) throw std::domain_error("step_cap must be at least 4^n");
  return cap;
}

bool gap_matches(GapCondition cond, int exponent, int wanted) {
  return cond == GapCondition::exactly ? exponent == wanted : exponent >= wanted;
}

CrossingTail summarize(int exponent, double p, std::uint64_t threshold, std::uint64_t cap,
                       std::vector<CrossingSample> samples) {
  CrossingTail out;
  out.exponent = exponent;
  out.p = p;
  out.threshold = threshold;
  out.step_cap = cap;
  for (const auto& s : samples) {
    if (!s.time) ++out.censored;
    if (!s.time || *s.time > threshold) ++out.successes;
  }
  out.estimate = proportion_estimate(out.successes, samples.size());
  out.dp_tail = dp_first_passage_reflected(1 << exponent, threshold).tail_at(threshold);
  out.samples = std::move(samples);
  return out;
}

}  // namespace

CrossingTail estimate_crossing_tail(int exponent, double p, std::uint64_t replicas,
                                    std::uint64_t seed, const CrossingTailOptions& opts) {
  const std::uint64_t threshold = crossing_threshold(exponent);
  const std::uint64_t cap = resolve_cap(opts.step_cap, threshold);
  if (replicas < 100) throw std::domain_error("estimate_crossing_tail needs at least 100 replicas");

  auto samples = parallel_map<CrossingSample>(replicas, opts.threads, [&](std::size_t i) {
    auto layout = build_layout(opts.epsilon, derive_seed(seed, {i, kEnvironment}), false);
    const std::size_t j =
        layout->find_right_gap([&](int k) { return gap_matches(opts.condition, k, exponent); });
    const auto env = CookieEnvironment::counterexample(layout, p);
    return CrossingSample{layout->gap(Side::right, j),
                          crossing_time(env, *layout, j, cap, Stream(derive_seed(seed, {i, kWalk})))};
  });
  return summarize(exponent, p, threshold, cap, std::move(samples));
}

CrossingTail estimate_crossing_tail_quenched(int exponent, double p, std::uint64_t gaps,
                                             std::uint64_t env_seed, std::uint64_t walk_seed,
                                             const CrossingTailOptions& opts) {
  const std::uint64_t threshold = crossing_threshold(exponent);
  const std::uint64_t cap = resolve_cap(opts.step_cap, threshold);
  if (gaps == 0) throw std::domain_error("need at least one gap");

  auto layout = build_layout(opts.epsilon, env_seed, false);
  std::vector<std::size_t> indices;
  for (std::size_t j = 1; indices.size() < gaps; ++j) {
    j = layout->find_right_gap([&](int k) { return gap_matches(opts.condition, k, exponent); }, j);
    indices.push_back(j);
  }
  const auto env = CookieEnvironment::counterexample(layout, p);
  auto samples = parallel_map<CrossingSample>(indices.size(), opts.threads, [&](std::size_t i) {
    const std::size_t j = indices[i];
    return CrossingSample{layout->gap(Side::right, j),
                          crossing_time(env, *layout, j, cap, Stream(derive_seed(walk_seed, {i})))};
  });
  return summarize(exponent, p, threshold, cap, std::move(samples));
}

std::uint64_t RenewalCounts::count(int exponent) const {
  auto it = by_exponent.find(exponent);
  return it == by_exponent.end() ? 0 : it->second;
}

RenewalCounts renewal_counts(const RenewalLayout& layout, std::int64_t horizon) {
  if (horizon < 1) throw std::domain_error("renewal_counts requires K >= 1");
  RenewalCounts out;
  out.horizon = horizon;
  for (std::size_t j = 1; layout.right_sum(j) < horizon; ++j) {
    ++out.total;
    ++out.by_exponent[RenewalLayout::exponent_of(layout.gap(Side::right, j))];
  }
  return out;
}

double SpeedProfile::running_max_at(std::int64_t target) const {
  if (target < 1 || target > static_cast<std::int64_t>(first_passage.size())) {
    throw std::out_of_range("target outside the recorded profile");
  }
  return first_passage[static_cast<std::size_t>(target - 1)].running_max;
}

SpeedProfile tk_over_k_profile(std::uint64_t env_seed, std::uint64_t walk_seed, std::int64_t k_max,
                               std::uint64_t step_cap, const ProfileOptions& opts) {
  if (k_max < 1) throw std::domain_error("tk_over_k_profile requires K_max >= 1");
  auto layout = build_layout(opts.epsilon, env_seed, opts.draw_shift);
  Walker walker(CookieEnvironment::counterexample(layout, opts.p), 0, Stream(walk_seed));

  SpeedProfile out;
  out.first_passage.reserve(static_cast<std::size_t>(k_max));
  double running = 0.0;
  auto record = [&](std::int64_t k, std::optional<std::uint64_t> t) {
    const double base = static_cast<double>(t ? *t : step_cap);
    const double ratio = base / static_cast<double>(k);
    running = std::max(running, ratio);
    out.first_passage.push_back({k, t, ratio, running});
  };

  std::int64_t next_target = 1;
  std::uint64_t next_checkpoint = 1;
  while (next_target <= k_max && walker.time() < step_cap) {
    walker.step();
    if (walker.time() == next_checkpoint) {
      out.checkpoints.push_back({walker.time(), walker.position(),
                                 static_cast<double>(walker.position()) /
                                     static_cast<double>(walker.time())});
      next_checkpoint *= 2;
    }
    if (walker.position() == next_target) {
      record(next_target, walker.time());
      ++next_target;
    }
  }
  for (; next_target <= k_max; ++next_target) record(next_target, std::nullopt);
  return out;
}

SpeedEstimate speed_estimate(const EnvDescriptor& env, std::uint64_t steps,
                             const std::vector<std::uint64_t>& checkpoints, std::uint64_t replicas,
                             std::uint64_t seed, unsigned threads) {
  if (checkpoints.empty()) throw std::domain_error("speed_estimate needs checkpoints");
  if (replicas == 0) throw std::domain_error("speed_estimate needs replicas >= 1");
  std::vector<std::uint64_t> marks = checkpoints;
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  if (marks.front() == 0) throw std::domain_error("checkpoints must be positive");
  if (steps < marks.back()) throw std::domain_error("steps must be >= the largest checkpoint");

  const bool annealed = env.variant == "counterexample" && !env.env_seed;
  auto positions = parallel_map<std::vector<Site>>(replicas, threads, [&](std::size_t i) {
    EnvDescriptor d = env;
    if (annealed) d.env_seed = derive_seed(seed, {i, kEnvironment});
    Walker walker(d.build(), 0, Stream(derive_seed(seed, {i, kWalk})));
    std::vector<Site> at;
    at.reserve(marks.size());
    for (std::uint64_t mark : marks) {
      while (walker.time() < mark) walker.step();
      at.push_back(walker.position());
    }
    return at;
  });

  SpeedEstimate out;
  out.checkpoints = marks;
  for (std::size_t c = 0; c < marks.size(); ++c) {
    MeanAccumulator acc;
    std::uint64_t positive = 0;
    for (const auto& row : positions) {
      acc.add(static_cast<double>(row[c]) / static_cast<double>(marks[c]));
      positive += row[c] > 0;
    }
    out.ratio.push_back(acc.estimate());
    out.positive.push_back(proportion_estimate(positive, replicas));
  }
  for (const auto& row : positions) out.final_positions.push_back(row.back());
  out.positive_fraction = out.positive.back();
  return out;
}

double binomial_upper_tail(std::uint64_t trials, double prob, double k) {
  const double kk = std::ceil(k);
  if (kk <= 0.0) return 1.0;
  if (kk > static_cast<double>(trials)) return 0.0;
  const boost::math::binomial_distribution<double> bin(static_cast<double>(trials), prob);
  return boost::math::cdf(boost::math::complement(bin, kk - 1.0));
}

BinomialFloorReport binomial_floor_check(int exponent, std::int64_t horizon,
                                         std::uint64_t replicas, const BinomialFloorOptions& opts) {
  const std::uint64_t slow = crossing_threshold(exponent);
  const std::uint64_t cap = resolve_cap(opts.step_cap, slow);
  if (replicas == 0) throw std::domain_error("binomial_floor_check needs replicas >= 1");
  if (horizon < 1) throw std::domain_error("binomial_floor_check requires K >= 1");

  const DerivedConstants k = derived_constants(opts.epsilon);
  const double scale = std::pow(4.0, -opts.epsilon * exponent);
  BinomialFloorReport out;
  out.exponent = exponent;
  out.horizon = horizon;
  out.trials = static_cast<std::uint64_t>(std::ceil(k.alpha * static_cast<double>(horizon) * scale / 2.0));
  if (out.trials == 0) throw std::domain_error("binomial first parameter is zero; increase K");
  out.threshold = opts.c * static_cast<double>(horizon) * scale;
  out.beta = opts.beta.value_or(k.beta_floor);
  out.binomial_tail = binomial_upper_tail(out.trials, out.beta, out.threshold);

  struct ReplicaCount {
    std::uint64_t slow = 0;
    bool is_short = false;
  };
  auto counts = parallel_map<ReplicaCount>(replicas, opts.threads, [&](std::size_t i) {
    auto layout = build_layout(opts.epsilon, derive_seed(opts.seed, {i, kEnvironment}), false);
    const auto env = CookieEnvironment::counterexample(layout, opts.p);
    ReplicaCount rc;
    std::uint64_t used = 0;
    for (std::size_t j = 1; used < out.trials && layout->right_sum(j) < horizon; ++j) {
      if (RenewalLayout::exponent_of(layout->gap(Side::right, j)) != exponent) continue;
      ++used;
      const auto t = crossing_time(env, *layout, j, cap, Stream(derive_seed(opts.seed, {i, kWalk, j})));
      if (!t || *t > slow) ++rc.slow;
    }
    rc.is_short = used < out.trials;
    return rc;
  });

  std::uint64_t hits = 0;
  for (const auto& rc : counts) {
    out.slow_counts.push_back(rc.slow);
    if (rc.is_short) ++out.short_replicas;
    if (static_cast<double>(rc.slow) >= out.threshold) ++hits;
  }
  out.empirical = proportion_estimate(hits, replicas);
  return out;
}

}  // namespace cookiewalk
