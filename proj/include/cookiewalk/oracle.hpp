#pragma once

// Simulation-free reference computations.

#include <cstdint>
#include <vector>

namespace cookiewalk {

// Law of the simple random walk on {0, ..., m} reflected at 0 (forced step to
// 1) and absorbed at m, started at 0.
class ReflectedWalkDistribution {
 public:
  explicit ReflectedWalkDistribution(int level);

  void propagate();

  int level() const noexcept { return level_; }
  std::uint64_t steps() const noexcept { return steps_; }
  /// probabilities()[i] = P(X_t = i, not yet absorbed), i < level.
  const std::vector<double>& probabilities() const noexcept { return prob_; }
  double absorbed_mass() const noexcept { return absorbed_; }
  double surviving_mass() const noexcept;
  /// Mass sitting on states whose parity differs from the step count.
  double wrong_parity_mass() const noexcept;

 private:
  int level_;
  std::uint64_t steps_ = 0;
  std::vector<double> prob_;
  std::vector<double> next_;
  double absorbed_ = 0.0;
};

struct FirstPassageDistribution {
  int level = 0;
  std::uint64_t horizon = 0;
  /// tail[t] = P(T >= t) for t = 0..horizon.
  std::vector<double> tail;
  /// E[T]; a lower bound when mean_is_lower_bound is set.
  double mean_hitting_time = 0.0;
  bool mean_is_lower_bound = false;
  /// Largest |sum of mass - 1| observed across propagation steps.
  double max_mass_error = 0.0;

  double tail_at(std::uint64_t t) const;
};

/// Exact first-passage tail of the reflected walk to `level`.
/// Horizon 0 selects the default 50 * level^2.
FirstPassageDistribution dp_first_passage_reflected(int level, std::uint64_t horizon = 0);

double normal_cdf(double x);

/// P(sup_{s <= t} |B_s| < 1) for standard Brownian motion, image series.
double bm_two_sided_tail(double t);

struct DerivedConstants {
  double epsilon;
  double gamma;
  double expected_gap;
  double alpha;         // gamma / (2 E[Z])
  double beta_floor;    // 0.3
  double c_threshold;   // alpha * beta_floor / 2
};

DerivedConstants derived_constants(double epsilon);

}  // namespace cookiewalk
