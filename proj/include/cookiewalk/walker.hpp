#pragma once

// Excited random walk on Z.
//
// On its k-th visit to site x the walker jumps right with probability
// omega(x, k) and left otherwise, where k counts the current visit too.

#include <cstdint>
#include <optional>
#include <vector>

#include "cookiewalk/gapenv.hpp"
#include "cookiewalk/rng.hpp"

namespace cookiewalk {

/// Per-site visit counters stored in a window that grows in either direction.
class VisitCounts {
 public:
  std::uint64_t get(Site site) const noexcept;
  /// Adds one visit and returns the new count.
  std::uint64_t increment(Site site);
  /// Sum over all sites.
  std::uint64_t total() const noexcept { return total_; }
  Site lowest() const noexcept { return offset_; }
  Site highest() const noexcept { return offset_ + static_cast<Site>(counts_.size()) - 1; }

 private:
  void grow_to(Site site);

  Site offset_ = 0;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct WalkState {
  Site position = 0;
  std::uint64_t time = 0;
  VisitCounts visits;
  Stream rng;

  static WalkState start(Site position, Stream rng);
};

/// One step of the walk; consumes exactly one uniform draw.
void step(WalkState& state, const CookieEnvironment& env);

struct TrajectoryPoint {
  std::uint64_t step;
  Site position;
};

// Stateful walker with a fast path for the counterexample environment: it
// caches the pair of cookie sites around the current position, so the layout
// is only consulted when the walk leaves that bracket. Trajectories are
// identical to repeated calls of step().
class Walker {
 public:
  Walker(CookieEnvironment env, Site start, Stream rng, std::uint64_t record_every = 0);

  void step();
  /// Runs until the position equals target or time reaches cap. Returns the hit time.
  std::optional<std::uint64_t> run_until(Site target, std::uint64_t cap);

  const WalkState& state() const noexcept { return state_; }
  Site position() const noexcept { return state_.position; }
  std::uint64_t time() const noexcept { return state_.time; }
  const CookieEnvironment& environment() const noexcept { return env_; }
  const std::vector<TrajectoryPoint>& trajectory() const noexcept { return trajectory_; }

 private:
  double right_probability(std::uint64_t visit);

  CookieEnvironment env_;
  WalkState state_;
  std::uint64_t record_every_;
  std::vector<TrajectoryPoint> trajectory_;

  const Counterexample* counterexample_ = nullptr;
  Site bracket_lo_ = 1;  // empty bracket forces a lookup
  Site bracket_hi_ = 0;
};

struct FirstPassageRecord {
  Site target = 0;
  std::optional<std::uint64_t> hitting_time;  // nullopt: censored
  std::uint64_t step_cap = 0;

  bool censored() const noexcept { return !hitting_time.has_value(); }
};

FirstPassageRecord first_passage(Site start, const CookieEnvironment& env, Site target,
                                 std::uint64_t step_cap, Stream rng);

/// Steps from first entry into the cookie-free interval to the right of cookie
/// site S_{gap_index-1} until the first visit of S_{gap_index}. The walk runs
/// in the full environment and may leave the interval to the left.
/// nullopt when censored at step_cap.
std::optional<std::uint64_t> crossing_time(const CookieEnvironment& env, const RenewalLayout& layout,
                                           std::size_t gap_index, std::uint64_t step_cap,
                                           Stream rng);

struct CoupledResult {
  std::optional<std::uint64_t> reflected_time;  // X reaches 2^n
  std::optional<std::uint64_t> erw_time;        // Y reaches 2^n
  bool ever_split = false;
  std::uint64_t steps = 0;
  std::uint64_t domination_violations = 0;  // steps with Y > X
};

/// Runs the walker Y together with a simple random walk X reflected at the
/// cookie site `origin`, both started at origin + 1. Inside the interval they
/// make identical moves; at the origin X steps right with probability one and
/// Y with the environment's probability, driven by a shared uniform. After a
/// split they move independently until they land on the same site.
CoupledResult coupled_run(const CookieEnvironment& env, Site origin, int exponent,
                          std::uint64_t step_cap, Stream rng);

/// As above in a counterexample environment drawn from rng, at the first right
/// gap of size at least 2^exponent.
CoupledResult coupled_run(double p, int exponent, std::uint64_t step_cap, Stream rng,
                          double epsilon = 0.75);

}  // namespace cookiewalk
