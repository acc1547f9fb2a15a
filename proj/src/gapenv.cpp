#include "cookiewalk/gapenv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cookiewalk {

namespace {

constexpr std::uint64_t kGapTag = 0x67617073ULL;    // "gaps"
constexpr std::uint64_t kShiftTag = 0x73686674ULL;  // "shft"

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.5 && epsilon < 1.0)) {
    throw std::domain_error("epsilon must lie in (0.5, 1), got " + std::to_string(epsilon));
  }
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("jump probability must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

double gamma_of_epsilon(double epsilon) {
  check_epsilon(epsilon);
  const double r = std::pow(4.0, -epsilon);
  return (1.0 - r) / (r * r);
}

GapDistribution::GapDistribution(double epsilon)
    : epsilon_(epsilon),
      gamma_(gamma_of_epsilon(epsilon)),
      ratio_(std::pow(4.0, -epsilon)),
      log_ratio_(std::log(ratio_)) {}

double GapDistribution::pmf(int exponent) const {
  if (exponent < 2) return 0.0;
  return (1.0 - ratio_) * std::pow(ratio_, exponent - 2);
}

double GapDistribution::tail(int exponent) const {
  if (exponent <= 2) return 1.0;
  return std::pow(ratio_, exponent - 2);
}

double GapDistribution::expected_gap() const noexcept {
  return 4.0 * (1.0 - ratio_) / (1.0 - 2.0 * ratio_);
}

int GapDistribution::exponent_from_uniform(double u) const noexcept {
  // P(floor(log u / log r) >= k) = P(u <= r^k) = r^k.
  return 2 + static_cast<int>(std::floor(std::log(u) / log_ratio_));
}

std::int64_t GapDistribution::sample(Stream& rng) const {
  return std::int64_t{1} << exponent_from_uniform(to_unit_open_closed(rng()));
}

RenewalLayout::RenewalLayout(double epsilon, std::uint64_t env_seed, bool draw_shift)
    : dist_(epsilon), env_seed_(env_seed) {
  if (draw_shift) {
    const auto first_left = static_cast<std::uint64_t>(gap(Side::left, 1));
    shift_ = static_cast<std::int64_t>(derive_seed(env_seed_, {kShiftTag}) % first_left);
  }
}

RenewalLayout::RenewalLayout(double epsilon, std::uint64_t env_seed, FixedShift shift)
    : dist_(epsilon), env_seed_(env_seed), shift_(shift.value) {
  if (shift_ < 0 || shift_ >= gap(Side::left, 1)) {
    throw std::domain_error("shift_u must lie in {0, ..., |Z^-_1| - 1}");
  }
}

std::int64_t RenewalLayout::gap(Side side, std::size_t index) const {
  if (index == 0) throw std::domain_error("gap index starts at 1");
  const std::uint64_t bits =
      derive_seed(env_seed_, {kGapTag, static_cast<std::uint64_t>(side), index});
  return std::int64_t{1} << dist_.exponent_from_uniform(to_unit_open_closed(bits));
}

int RenewalLayout::exponent_of(std::int64_t gap) noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(gap));
}

void RenewalLayout::extend_until(Side side, std::int64_t magnitude) const {
  auto& v = sums_[static_cast<int>(side)];
  while (v.empty() || v.back() <= magnitude) {
    const std::int64_t prev = v.empty() ? 0 : v.back();
    v.push_back(prev + gap(side, v.size() + 1));
  }
}

void RenewalLayout::extend_to_index(Side side, std::size_t index) const {
  auto& v = sums_[static_cast<int>(side)];
  while (v.size() < index) {
    const std::int64_t prev = v.empty() ? 0 : v.back();
    v.push_back(prev + gap(side, v.size() + 1));
  }
}

std::int64_t RenewalLayout::sum_at(Side side, std::size_t index) const {
  if (index == 0) return 0;
  {
    std::shared_lock lock(mutex_);
    const auto& v = sums_[static_cast<int>(side)];
    if (v.size() >= index) return v[index - 1];
  }
  std::unique_lock lock(mutex_);
  extend_to_index(side, index);
  return sums_[static_cast<int>(side)][index - 1];
}

std::int64_t RenewalLayout::right_sum(std::size_t index) const { return sum_at(Side::right, index); }

std::int64_t RenewalLayout::left_sum(std::size_t index) const { return -sum_at(Side::left, index); }

std::size_t RenewalLayout::materialized_right() const {
  std::shared_lock lock(mutex_);
  return sums_[0].size();
}

std::pair<std::int64_t, std::int64_t> RenewalLayout::enclosing_sums(std::int64_t y) const {
  const Side side = y >= 0 ? Side::right : Side::left;
  // Right: need some sum > y. Left: need some |sum| >= |y|, i.e. > |y| - 1.
  const std::int64_t need = y >= 0 ? y : -y - 1;
  auto search = [&](const std::vector<std::int64_t>& v) -> std::pair<std::int64_t, std::int64_t> {
    if (y >= 0) {
      // First magnitude > y; the previous entry (or 0) is <= y.
      auto it = std::upper_bound(v.begin(), v.end(), y);
      const std::int64_t lo = it == v.begin() ? 0 : *(it - 1);
      return {lo, *it};
    }
    // First magnitude >= -y gives the left end; the one before it the right end.
    auto it = std::lower_bound(v.begin(), v.end(), -y);
    const std::int64_t hi = it == v.begin() ? 0 : -*(it - 1);
    if (*it == -y) {
      // y is itself a partial sum.
      return {y, hi};
    }
    return {-*it, hi};
  };
  {
    std::shared_lock lock(mutex_);
    const auto& v = sums_[static_cast<int>(side)];
    if (!v.empty() && v.back() > need) return search(v);
  }
  std::unique_lock lock(mutex_);
  extend_until(side, need);
  return search(sums_[static_cast<int>(side)]);
}

bool RenewalLayout::is_partial_sum(std::int64_t y) const { return enclosing_sums(y).first == y; }

std::shared_ptr<const RenewalLayout> build_layout(double epsilon, std::uint64_t env_seed,
                                                  bool draw_shift) {
  return std::make_shared<const RenewalLayout>(epsilon, env_seed, draw_shift);
}

CookieEnvironment CookieEnvironment::homogeneous(int cookies, double p) {
  if (cookies < 0) throw std::domain_error("cookie count must be non-negative");
  check_probability(p);
  return CookieEnvironment(Homogeneous{cookies, p});
}

CookieEnvironment CookieEnvironment::counterexample(std::shared_ptr<const RenewalLayout> layout,
                                                    double p) {
  if (!layout) throw std::invalid_argument("counterexample environment needs a layout");
  check_probability(p);
  return CookieEnvironment(Counterexample{std::move(layout), p});
}

CookieEnvironment CookieEnvironment::uniform(double p) {
  check_probability(p);
  return CookieEnvironment(Uniform{p});
}

double CookieEnvironment::bias() const noexcept {
  return std::visit([](const auto& v) { return v.p; }, variant_);
}

bool CookieEnvironment::is_cookie_site(Site site) const {
  struct Visitor {
    Site site;
    bool operator()(const Homogeneous& h) const { return h.cookies > 0; }
    bool operator()(const Counterexample& c) const {
      return c.layout->is_partial_sum(site - c.layout->shift());
    }
    bool operator()(const Uniform& u) const { return u.p != 0.5; }
  };
  return std::visit(Visitor{site}, variant_);
}

double CookieEnvironment::probability(Site site, std::uint64_t visit) const {
  if (visit == 0) throw std::domain_error("visit index starts at 1");
  struct Visitor {
    Site site;
    std::uint64_t visit;
    double operator()(const Homogeneous& h) const {
      return visit <= static_cast<std::uint64_t>(h.cookies) ? h.p : 0.5;
    }
    double operator()(const Counterexample& c) const {
      return c.layout->is_partial_sum(site - c.layout->shift()) ? c.p : 0.5;
    }
    double operator()(const Uniform& u) const { return u.p; }
  };
  return std::visit(Visitor{site, visit}, variant_);
}

std::vector<SiteRecord> window_dump(const CookieEnvironment& env, Site lo, Site hi) {
  if (lo > hi) throw std::domain_error("window_dump requires lo <= hi");
  std::vector<SiteRecord> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (Site x = lo; x <= hi; ++x) out.push_back({x, env.is_cookie_site(x)});
  return out;
}

std::map<std::string, std::string> EnvDescriptor::to_kv() const {
  std::map<std::string, std::string> kv;
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  kv["variant"] = variant;
  kv["p"] = num(p);
  if (cookies) kv["M"] = std::to_string(*cookies);
  if (epsilon) kv["epsilon"] = num(*epsilon);
  if (env_seed) kv["env_seed"] = std::to_string(*env_seed);
  if (shift_u) kv["shift_u"] = std::to_string(*shift_u);
  return kv;
}

EnvDescriptor EnvDescriptor::from_kv(const std::map<std::string, std::string>& kv) {
  EnvDescriptor d;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* v = get("variant")) d.variant = *v;
  if (d.variant != "homogeneous" && d.variant != "counterexample" && d.variant != "uniform") {
    throw std::invalid_argument("unknown environment variant '" + d.variant + "'");
  }
  if (auto* v = get("p")) d.p = std::stod(*v);
  if (auto* v = get("M")) d.cookies = std::stoi(*v);
  if (auto* v = get("epsilon")) d.epsilon = std::stod(*v);
  if (auto* v = get("env_seed")) d.env_seed = std::stoull(*v);
  if (auto* v = get("shift_u")) d.shift_u = std::stoll(*v);
  return d;
}

std::string EnvDescriptor::to_string() const {
  std::string out;
  for (const auto& [k, v] : to_kv()) {
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

EnvDescriptor EnvDescriptor::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return from_kv(kv);
}

CookieEnvironment EnvDescriptor::build(std::uint64_t fallback_seed) const {
  if (variant == "homogeneous") {
    if (!cookies) throw std::invalid_argument("homogeneous environment needs M");
    return CookieEnvironment::homogeneous(*cookies, p);
  }
  if (variant == "uniform") return CookieEnvironment::uniform(p);
  const double eps = epsilon.value_or(0.75);
  const std::uint64_t seed = env_seed.value_or(fallback_seed);
  std::shared_ptr<const RenewalLayout> layout =
      shift_u ? std::make_shared<const RenewalLayout>(eps, seed, RenewalLayout::FixedShift{*shift_u})
              : build_layout(eps, seed, draw_shift);
  return CookieEnvironment::counterexample(std::move(layout), p);
}

}  // namespace cookiewalk
