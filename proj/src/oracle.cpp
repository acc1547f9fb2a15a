#include "cookiewalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cookiewalk/gapenv.hpp"

namespace cookiewalk {

ReflectedWalkDistribution::ReflectedWalkDistribution(int level)
    : level_(level), prob_(static_cast<std::size_t>(level > 0 ? level : 1), 0.0), next_(prob_) {
  if (level < 1) throw std::domain_error("reflected walk level must be >= 1");
  prob_[0] = 1.0;
}

void ReflectedWalkDistribution::propagate() {
  std::fill(next_.begin(), next_.end(), 0.0);
  const auto m = static_cast<std::size_t>(level_);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = prob_[i];
    if (w == 0.0) continue;
    if (i == 0) {
      if (m == 1) absorbed_ += w;
      else next_[1] += w;
      continue;
    }
    next_[i - 1] += 0.5 * w;
    if (i + 1 == m) absorbed_ += 0.5 * w;
    else next_[i + 1] += 0.5 * w;
  }
  prob_.swap(next_);
  ++steps_;
}

double ReflectedWalkDistribution::surviving_mass() const noexcept {
  double s = 0.0;
  for (double w : prob_) s += w;
  return s;
}

double ReflectedWalkDistribution::wrong_parity_mass() const noexcept {
  double s = 0.0;
  for (std::size_t i = (steps_ + 1) % 2; i < prob_.size(); i += 2) s += prob_[i];
  return s;
}

double FirstPassageDistribution::tail_at(std::uint64_t t) const {
  if (t >= tail.size()) throw std::out_of_range("threshold beyond horizon");
  return tail[t];
}

FirstPassageDistribution dp_first_passage_reflected(int level, std::uint64_t horizon) {
  if (level < 1) throw std::domain_error("level must be >= 1");
  if (horizon == 0) horizon = 50ULL * static_cast<std::uint64_t>(level) * level;
  if (horizon < static_cast<std::uint64_t>(level)) {
    throw std::domain_error("horizon must be >= level");
  }

  FirstPassageDistribution out;
  out.level = level;
  out.horizon = horizon;
  out.tail.resize(horizon + 1);
  out.tail[0] = 1.0;

  ReflectedWalkDistribution dist(level);
  // Neumaier-compensated sum of P(T >= t), t >= 1.
  double mean = 0.0;
  double comp = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    // P(T >= t) = P(not absorbed after t - 1 steps).
    // Re-summing the surviving mass can drift up by an ulp on steps without absorption.
    const double surviving = std::min(dist.surviving_mass(), out.tail[t - 1]);
    out.tail[t] = surviving;
    const double s = mean + surviving;
    comp += std::abs(mean) >= surviving ? (mean - s) + surviving : (surviving - s) + mean;
    mean = s;
    out.max_mass_error =
        std::max(out.max_mass_error, std::abs(surviving + dist.absorbed_mass() - 1.0));
    if (t < horizon) dist.propagate();
  }
  out.mean_hitting_time = mean + comp;
  out.mean_is_lower_bound = dist.absorbed_mass() < 1.0 - 1e-12;
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Phi(b) - Phi(a) for a < b, evaluated on the tail that keeps precision.
double normal_mass(double a, double b) {
  if (a >= 0.0) return 0.5 * (std::erfc(a / std::sqrt(2.0)) - std::erfc(b / std::sqrt(2.0)));
  if (b <= 0.0) return 0.5 * (std::erfc(-b / std::sqrt(2.0)) - std::erfc(-a / std::sqrt(2.0)));
  return normal_cdf(b) - normal_cdf(a);
}

}  // namespace

double bm_two_sided_tail(double t) {
  if (!(t > 0.0)) throw std::domain_error("bm_two_sided_tail requires t > 0");
  const double s = std::sqrt(t);
  double sum = normal_mass(-1.0 / s, 1.0 / s);
  // Terms k and -k are equal by symmetry and decrease in k.
  for (long k = 1;; ++k) {
    const double term = 2.0 * normal_mass((2.0 * k - 1.0) / s, (2.0 * k + 1.0) / s);
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-14) break;
  }
  return sum;
}

DerivedConstants derived_constants(double epsilon) {
  const GapDistribution dist(epsilon);
  DerivedConstants c{};
  c.epsilon = epsilon;
  c.gamma = dist.gamma();
  c.expected_gap = dist.expected_gap();
  c.alpha = c.gamma / (2.0 * c.expected_gap);
  c.beta_floor = 0.3;
  c.c_threshold = c.alpha * c.beta_floor / 2.0;
  return c;
}

}  // namespace cookiewalk
