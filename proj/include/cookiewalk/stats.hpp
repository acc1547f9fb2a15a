#pragma once

#include <cstdint>
#include <utility>

namespace cookiewalk {

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double level = 0.95);

/// Two-sided standard normal quantile for a confidence level, e.g. 1.96 for 0.95.
double z_for_level(double level);

// Monte Carlo point estimate with a 95% interval. Proportions carry the
// Wilson interval; means carry the normal interval point +- z * std_error.
struct EstimateCI {
  double point = 0.0;
  std::uint64_t replicas = 0;
  double std_error = 0.0;
  double low = 0.0;
  double high = 0.0;

  bool contains(double v) const noexcept { return low <= v && v <= high; }
};

EstimateCI proportion_estimate(std::uint64_t successes, std::uint64_t trials, double level = 0.95);

// Count, sum and sum of squares; merging is associative and commutative.
class MeanAccumulator {
 public:
  void add(double x) noexcept {
    ++count_;
    sum_ += x;
    sum_sq_ += x * x;
  }
  MeanAccumulator& merge(const MeanAccumulator& other) noexcept {
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
    return *this;
  }

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept;
  /// Unbiased sample variance.
  double variance() const noexcept;
  EstimateCI estimate(double level = 0.95) const;

 private:
  std::uint64_t count_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

}  // namespace cookiewalk
