// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "cookiewalk/experiments.hpp"
#include "cookiewalk/oracle.hpp"
#include "cookiewalk/walker.hpp"
#include "reference.hpp"

using namespace cookiewalk;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Outcome sampler_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const GapDistribution dist(0.75);
  Stream rng(2024);
  constexpr int kDraws = 1'000'000;
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < kDraws; ++i) ++counts[dist.sample(rng)];
  const double elapsed = seconds_since(t0);

  bool ok = elapsed < 5.0;
  std::ostringstream d;
  const double r = std::pow(4.0, -0.75);
  for (int n : {2, 3, 4}) {
    const double q = (1.0 - r) * std::pow(r, n - 2);
    const double se = std::sqrt(q * (1.0 - q) / kDraws);
    const double z = (counts[std::int64_t{1} << n] / double(kDraws) - q) / se;
    ok &= std::abs(z) <= 4.0;
    d << "Z=" << (1 << n) << " z=" << fmt("%+.2f", z) << " ";
  }
  d << "time=" << fmt("%.2f", elapsed) << "s";
  return {ok, d.str()};
}

Outcome closed_forms() {
  bool ok = true;
  std::ostringstream d;
  for (double eps : {0.55, 0.6, 0.75, 0.9}) {
    const GapDistribution dist(eps);
    const double gamma_err = std::abs(gamma_of_epsilon(eps) - 1.0 / reference::geometric_partial_sum(eps, 201));
    const double mean_err = std::abs(dist.expected_gap() - reference::expected_gap_partial_sum(eps, 200));
    ok &= gamma_err <= 1e-10 && mean_err <= 1e-10;
    d << "eps=" << eps << " dgamma=" << fmt("%.1e", gamma_err) << " dE[Z]=" << fmt("%.1e", mean_err) << "; ";
  }
  return {ok, d.str()};
}

Outcome oracle_exactness() {
  bool ok = true;
  for (int m = 1; m <= 4; ++m) {
    ok &= dp_first_passage_reflected(m, 16).tail == reference::enumerate_reflected_tail(m, 16);
  }
  std::ostringstream d;
  d << "enumeration m<=4 " << (ok ? "exact" : "mismatch") << "; mean-m^2:";
  for (int m : {2, 4, 8, 16}) {
    const auto dp = dp_first_passage_reflected(m);
    const double err = std::abs(dp.mean_hitting_time - double(m) * m);
    ok &= err <= 1e-9 && !dp.mean_is_lower_bound;
    d << " " << fmt("%.1e", err);
  }
  return {ok, d.str()};
}

Outcome donsker() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  double tail = 0.0;
  d << "P(T>=4^n) n=2..7:";
  for (int n = 2; n <= 7; ++n) {
    const std::uint64_t th = std::uint64_t{1} << (2 * n);
    tail = dp_first_passage_reflected(1 << n, th).tail_at(th);
    d << " " << fmt("%.6f", tail);
  }
  const double elapsed = seconds_since(t0);
  const double bm = bm_two_sided_tail(1.0);
  d << "; bm_two_sided_tail(1)=" << fmt("%.10f", bm) << " 1-Phi(1)=" << fmt("%.10f", 1.0 - normal_cdf(1.0))
    << " time=" << fmt("%.2f", elapsed) << "s";
  return {std::abs(tail - bm) <= 0.02 && elapsed < 60.0, d.str()};
}

Outcome crossing_floor() {
  bool ok = true;
  std::ostringstream d;
  for (int n : {2, 3, 4}) {
    const auto r = estimate_crossing_tail(n, 0.75, 100'000, 100 + n);
    const bool hold = r.estimate.point >= r.dp_tail - 3.0 * r.estimate.std_error;
    ok &= hold;
    d << "n=" << n << " est=" << fmt("%.4f", r.estimate.point) << " dp=" << fmt("%.4f", r.dp_tail) << "; ";
  }
  std::uint64_t steps = 0, violations = 0;
  for (std::uint64_t i = 0; steps < 1'000'000; ++i) {
    const auto c = coupled_run(0.75, 4, 1'000'000, Stream(derive_seed(55, {i})));
    steps += c.steps;
    violations += c.domination_violations;
  }
  ok &= violations == 0;
  d << "coupled steps=" << steps << " violations=" << violations;
  return {ok, d.str()};
}

Outcome renewal_density() {
  const auto k = derived_constants(0.75);
  constexpr std::int64_t K = 1'000'000;
  int density_ok = 0, n2_ok = 0, n3_ok = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const RenewalLayout layout(0.75, derive_seed(1, {i}), false);
    const auto c = renewal_counts(layout, K);
    const double dens = static_cast<double>(c.total) / K;
    density_ok += std::abs(dens * k.expected_gap - 1.0) <= 0.05;
    n2_ok += static_cast<double>(c.count(2)) / K >= k.alpha * std::pow(4.0, -0.75 * 2);
    n3_ok += static_cast<double>(c.count(3)) / K >= k.alpha * std::pow(4.0, -0.75 * 3);
  }
  std::ostringstream d;
  d << "seeds within 5% of 1/E[Z]: " << density_ok << "/100; N_2 floor: " << n2_ok << "/100; N_3 floor: " << n3_ok
    << "/100";
  return {density_ok >= 95 && n2_ok >= 95 && n3_ok >= 95, d.str()};
}

Outcome tk_profile() {
  std::vector<double> at_1e3, at_1e4;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto prof = tk_over_k_profile(derive_seed(7, {i, 0}), derive_seed(7, {i, 1}), 10'000, 10'000'000'000ULL);
    at_1e3.push_back(prof.running_max_at(1000));
    at_1e4.push_back(prof.running_max_at(10'000));
  }
  const double threshold = 0.04 * std::pow(4.0, (1.0 - 0.75) * 2);
  const double m3 = median(at_1e3), m4 = median(at_1e4);
  std::ostringstream d;
  d << "median max T_K/K: K_max=1e3 " << fmt("%.3f", m3) << ", K_max=1e4 " << fmt("%.3f", m4)
    << "; threshold " << fmt("%.3f", threshold);
  return {m4 > threshold && m4 > m3, d.str()};
}

Outcome speed_regimes() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::uint64_t> marks = {10'000, 100'000, 1'000'000};
  EnvDescriptor d3{.variant = "homogeneous", .p = 0.75, .cookies = 3};
  EnvDescriptor d20{.variant = "homogeneous", .p = 0.75, .cookies = 20};
  const auto m3 = speed_estimate(d3, 1'000'000, marks, 200, 31);
  const auto m20 = speed_estimate(d20, 1'000'000, marks, 200, 32);
  const double elapsed = seconds_since(t0);

  const bool decreasing = m3.ratio[0].point > m3.ratio[1].point && m3.ratio[1].point > m3.ratio[2].point;
  const bool transient = m3.positive_fraction.point >= 0.9;
  const bool positive = m20.ratio[2].low > 0.0;
  std::ostringstream d;
  d << "M=3 Y/n: " << fmt("%.4f", m3.ratio[0].point) << " " << fmt("%.4f", m3.ratio[1].point) << " "
    << fmt("%.4f", m3.ratio[2].point) << ", P(Y>0)=" << fmt("%.3f", m3.positive_fraction.point)
    << "; M=20 Y/n=" << fmt("%.4f", m20.ratio[2].point) << " CI=[" << fmt("%.4f", m20.ratio[2].low) << ","
    << fmt("%.4f", m20.ratio[2].high) << "] ratio(1e6/1e5)=" << fmt("%.3f", m20.ratio[2].point / m20.ratio[1].point)
    << "; time=" << fmt("%.1f", elapsed) << "s";
  return {decreasing && transient && positive && elapsed < 900.0, d.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "cookiewalk_acceptance_repro";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> commands = {
      {"gaps", "--replicas", "50000"},
      {"env", "--lo", "-200", "--hi", "200"},
      {"walk", "--steps", "5000", "--K", "30", "--replicas", "200"},
      {"speed", "--steps", "20000", "--replicas", "40"},
      {"crossing", "--n", "3", "--replicas", "2000"},
      {"renewal", "--K", "100000", "--replicas", "10"},
      {"tkprofile", "--K-max", "2000"},
      {"regime", "--steps", "10000", "--replicas", "20"},
      {"oracle", "--n", "5"},
      {"constants"},
  };
  int files = 0, mismatches = 0, failures = 0;
  for (const auto& base : commands) {
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "1", "4"}) {
      auto args = base;
      dirs.push_back(root / (base[0] + std::to_string(dirs.size())));
      args.insert(args.end(), {"--seed", "11", "--threads", threads, "--out", dirs.back().string()});
      std::ostringstream out, err;
      failures += cli::run(args, out, err) != cli::kOk;
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const std::string bytes = slurp(entry.path());
      ++files;
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        mismatches += bytes != slurp(dirs[k] / entry.path().filename());
      }
    }
  }
  fs::remove_all(root);
  std::ostringstream d;
  d << commands.size() << " commands, " << files << " CSV files x 3 runs (threads 1,1,4): " << mismatches
    << " mismatches, " << failures << " failed runs";
  return {mismatches == 0 && failures == 0 && files > 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sampler law", sampler_law},
      {"closed forms", closed_forms},
      {"oracle exactness", oracle_exactness},
      {"Donsker consistency", donsker},
      {"crossing floor and coupling domination", crossing_floor},
      {"renewal densities", renewal_density},
      {"T_K/K profile", tk_profile},
      {"speed regimes", speed_regimes},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
