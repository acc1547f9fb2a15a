#include "cookiewalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace cookiewalk {

double z_for_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double level) {
  if (trials == 0) throw std::domain_error("wilson_interval requires trials >= 1");
  if (successes > trials) throw std::domain_error("wilson_interval requires successes <= trials");
  const double z = z_for_level(level);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

EstimateCI proportion_estimate(std::uint64_t successes, std::uint64_t trials, double level) {
  EstimateCI e;
  const auto [lo, hi] = wilson_interval(successes, trials, level);
  e.replicas = trials;
  e.point = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(trials));
  e.low = lo;
  e.high = hi;
  return e;
}

double MeanAccumulator::mean() const noexcept {
  return count_ == 0 ? 0.0 : sum_ / static_cast<double>(count_);
}

double MeanAccumulator::variance() const noexcept {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  const double m = sum_ / n;
  return std::max(0.0, (sum_sq_ - n * m * m) / (n - 1.0));
}

EstimateCI MeanAccumulator::estimate(double level) const {
  EstimateCI e;
  e.replicas = count_;
  e.point = mean();
  e.std_error = count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
  const double z = z_for_level(level);
  e.low = e.point - z * e.std_error;
  e.high = e.point + z * e.std_error;
  return e;
}

}  // namespace cookiewalk
