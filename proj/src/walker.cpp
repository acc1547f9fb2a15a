#include "cookiewalk/walker.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cookiewalk {

std::uint64_t VisitCounts::get(Site site) const noexcept {
  if (counts_.empty() || site < offset_ || site > highest()) return 0;
  return counts_[static_cast<std::size_t>(site - offset_)];
}

void VisitCounts::grow_to(Site site) {
  if (counts_.empty()) {
    offset_ = site - 32;
    counts_.assign(65, 0);
    return;
  }
  const auto size = static_cast<Site>(counts_.size());
  if (site < offset_) {
    const Site extra = std::max(offset_ - site, size);
    counts_.insert(counts_.begin(), static_cast<std::size_t>(extra), 0);
    offset_ -= extra;
  } else if (site > highest()) {
    const Site extra = std::max(site - highest(), size);
    counts_.resize(counts_.size() + static_cast<std::size_t>(extra), 0);
  }
}

std::uint64_t VisitCounts::increment(Site site) {
  if (counts_.empty() || site < offset_ || site > highest()) grow_to(site);
  ++total_;
  return ++counts_[static_cast<std::size_t>(site - offset_)];
}

WalkState WalkState::start(Site position, Stream rng) {
  WalkState s;
  s.position = position;
  s.rng = rng;
  s.visits.increment(position);
  return s;
}

void step(WalkState& state, const CookieEnvironment& env) {
  const double q = env.probability(state.position, state.visits.get(state.position));
  state.position += state.rng.bernoulli(q) ? 1 : -1;
  ++state.time;
  state.visits.increment(state.position);
}

Walker::Walker(CookieEnvironment env, Site start, Stream rng, std::uint64_t record_every)
    : env_(std::move(env)), state_(WalkState::start(start, rng)), record_every_(record_every) {
  counterexample_ = std::get_if<Counterexample>(&env_.variant());
  if (record_every_ > 0) trajectory_.push_back({0, start});
}

double Walker::right_probability(std::uint64_t visit) {
  if (counterexample_ == nullptr) return env_.probability(state_.position, visit);
  const Site x = state_.position;
  if (x < bracket_lo_ || x > bracket_hi_) {
    const Site shift = counterexample_->layout->shift();
    const auto [lo, hi] = counterexample_->layout->enclosing_sums(x - shift);
    bracket_lo_ = lo + shift;
    bracket_hi_ = hi + shift;
  }
  return (x == bracket_lo_ || x == bracket_hi_) ? counterexample_->p : 0.5;
}

void Walker::step() {
  const double q = right_probability(state_.visits.get(state_.position));
  state_.position += state_.rng.bernoulli(q) ? 1 : -1;
  ++state_.time;
  state_.visits.increment(state_.position);
  if (record_every_ > 0 && state_.time % record_every_ == 0) {
    trajectory_.push_back({state_.time, state_.position});
  }
}

std::optional<std::uint64_t> Walker::run_until(Site target, std::uint64_t cap) {
  while (state_.position != target) {
    if (state_.time >= cap) return std::nullopt;
    step();
  }
  return state_.time;
}

FirstPassageRecord first_passage(Site start, const CookieEnvironment& env, Site target,
                                 std::uint64_t step_cap, Stream rng) {
  const auto distance = static_cast<std::uint64_t>(std::llabs(target - start));
  if (step_cap < distance) throw std::domain_error("step_cap is smaller than |target - start|");
  Walker w(env, start, rng);
  return {target, w.run_until(target, step_cap), step_cap};
}

std::optional<std::uint64_t> crossing_time(const CookieEnvironment& env, const RenewalLayout& layout,
                                           std::size_t gap_index, std::uint64_t step_cap,
                                           Stream rng) {
  if (gap_index == 0 || gap_index > layout.materialized_right()) {
    throw std::domain_error("crossing_time: gap " + std::to_string(gap_index) +
                            " is not materialized");
  }
  const Site left = layout.right_sum(gap_index - 1) + layout.shift();
  const Site right = layout.right_sum(gap_index) + layout.shift();
  Walker w(env, left + 1, rng);
  return w.run_until(right, step_cap);
}

CoupledResult coupled_run(const CookieEnvironment& env, Site origin, int exponent,
                          std::uint64_t step_cap, Stream rng) {
  if (exponent < 2) throw std::domain_error("coupled_run requires exponent >= 2");
  const Site level = Site{1} << exponent;

  // Positions relative to origin.
  Site x = 1;
  Site y = 1;
  VisitCounts y_visits;
  y_visits.increment(origin + y);
  bool together = true;

  CoupledResult out;
  std::uint64_t t = 0;
  while (t < step_cap) {
    ++t;
    const double qy = env.probability(origin + y, y_visits.get(origin + y));
    if (!out.reflected_time) {
      if (together) {
        const double u = rng.uniform();
        const double qx = x == 0 ? 1.0 : 0.5;
        const Site dx = u < qx ? 1 : -1;
        const Site dy = u < qy ? 1 : -1;
        x += dx;
        y += dy;
        if (dx != dy) {
          together = false;
          out.ever_split = true;
        }
      } else {
        x += (x == 0 || rng.bernoulli(0.5)) ? 1 : -1;
        y += rng.bernoulli(qy) ? 1 : -1;
        together = x == y;
      }
      if (y > x) ++out.domination_violations;
      if (x == level) out.reflected_time = t;
    } else {
      y += rng.bernoulli(qy) ? 1 : -1;
    }
    y_visits.increment(origin + y);
    if (y == level) {
      out.erw_time = t;
      break;
    }
  }
  out.steps = t;
  return out;
}

CoupledResult coupled_run(double p, int exponent, std::uint64_t step_cap, Stream rng,
                          double epsilon) {
  const std::uint64_t env_seed = rng();
  auto layout = build_layout(epsilon, env_seed, false);
  const std::size_t j = layout->find_right_gap([exponent](int k) { return k >= exponent; });
  const Site origin = layout->right_sum(j - 1);
  return coupled_run(CookieEnvironment::counterexample(layout, p), origin, exponent, step_cap, rng);
}

}  // namespace cookiewalk
