#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "cookiewalk/experiments.hpp"
#include "cookiewalk/oracle.hpp"
#include "cookiewalk/parallel.hpp"
#include "cookiewalk/walker.hpp"
#include "output.hpp"

namespace cookiewalk::cli {

namespace {

const std::vector<std::string> kCommands = {"gaps",    "env",       "walk",   "speed",  "crossing",
                                            "renewal", "tkprofile", "regime", "oracle", "constants"};

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void build_app(CLI::App& app, RunConfig& cfg) {
  app.add_option("command", cfg.command, "One of: gaps env walk speed crossing renewal tkprofile "
                                         "regime oracle constants");
  app.add_option("--epsilon", cfg.epsilon, "Gap tail exponent, 1/2 < epsilon < 1");
  app.add_option("--p", cfg.p, "Cookie bias, 1/2 < p < 1");
  app.add_option("--variant", cfg.variant, "counterexample, homogeneous or uniform");
  app.add_option("--M", cfg.M, "Cookies per site (homogeneous)");
  app.add_option("--n", cfg.n, "Gap exponent, gap size 2^n");
  app.add_option("--K", cfg.K, "Horizon / target level");
  app.add_option("--K-max", cfg.K_max, "Largest first-passage target");
  app.add_option("--steps", cfg.steps, "Walk length");
  app.add_option("--step-cap", cfg.step_cap, "Censoring budget per run");
  app.add_option("--replicas", cfg.replicas, "Monte Carlo replicas");
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--env-seed", cfg.env_seed, "Environment seed");
  app.add_option("--lo", cfg.lo, "Window start (env)");
  app.add_option("--hi", cfg.hi, "Window end (env)");
  app.add_option("--every", cfg.every, "Trajectory thinning (walk)");
  app.add_option("--c", cfg.c, "Slow-crossing constant");
  app.add_option("--checkpoints", cfg.checkpoints, "Comma-separated step checkpoints")->delimiter(',');
  app.add_option("--M-list", cfg.M_list, "Comma-separated cookie counts (regime)")->delimiter(',');
  app.add_option("--max-censored-fraction", cfg.max_censored_fraction,
                 "Fail when a larger fraction of runs is censored");
  app.add_flag("--plot", cfg.plot, "Also write one SVG per CSV");
  app.add_option("--out", cfg.out_path, "Output directory")->envname("COOKIEWALK_OUT");
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = all cores")
      ->envname("COOKIEWALK_THREADS");
  app.set_config("--config", "", "Flat key=value file; flags take precedence");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

bool open_unit(double v) { return v > 0.5 && v < 1.0; }

}  // namespace

std::string usage() {
  return "usage: cookiewalk <command> [options]\n"
         "commands:\n"
         "  gaps       sample gap sizes and compare with the exact law\n"
         "  env        dump cookie sites of an environment window\n"
         "  walk       record one trajectory; with --K also first-passage times\n"
         "  speed      estimate Y_n/n at checkpoints\n"
         "  crossing   crossing tail of a 2^n gap and the coupled reflected walk\n"
         "  renewal    gap counts N(K) and N_n(K) over environment seeds\n"
         "  tkprofile  T_K/K profile of one quenched walk\n"
         "  regime     speed regimes of homogeneous cookie environments\n"
         "  oracle     exact reflected-walk tails and the Brownian limit\n"
         "  constants  derived constants\n"
         "run `cookiewalk --help` for options\n";
}

bool RunConfig::operator==(const RunConfig&) const = default;

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Excited random walk experiments", "cookiewalk"};
  build_app(app, cfg);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

RunConfig resolve(RunConfig cfg) {
  require(!cfg.command.empty(), "missing command");
  require(std::find(kCommands.begin(), kCommands.end(), cfg.command) != kCommands.end(),
          "unknown command: " + cfg.command);
  require(open_unit(cfg.epsilon), "--epsilon must satisfy 1/2 < epsilon < 1");
  require(open_unit(cfg.p), "--p must satisfy 1/2 < p < 1");
  if (cfg.n) require(*cfg.n >= 2 && *cfg.n <= 30, "--n must lie in [2, 30]");
  if (cfg.M) require(*cfg.M >= 1, "--M must be >= 1");
  if (cfg.K) require(*cfg.K >= 1, "--K must be >= 1");
  if (cfg.K_max) require(*cfg.K_max >= 1, "--K-max must be >= 1");
  require(cfg.every >= 1, "--every must be >= 1");
  require(cfg.c >= 0.0, "--c must be >= 0");
  require(cfg.max_censored_fraction >= 0.0 && cfg.max_censored_fraction <= 1.0,
          "--max-censored-fraction must lie in [0, 1]");
  for (int m : cfg.M_list) require(m >= 1, "--M-list entries must be >= 1");

  const std::string& cmd = cfg.command;
  auto default_to = [](auto& field, auto value) {
    if (field == 0) field = value;
  };

  if (cmd == "env" || cmd == "walk" || cmd == "speed") {
    if (cfg.variant.empty()) cfg.variant = cfg.M ? "homogeneous" : "counterexample";
    require(cfg.variant == "counterexample" || cfg.variant == "homogeneous" || cfg.variant == "uniform",
            "--variant must be counterexample, homogeneous or uniform");
    if (cfg.variant == "homogeneous") require(cfg.M.has_value(), "homogeneous variant needs --M");
    if (cfg.variant == "counterexample" && cmd != "speed" && !cfg.env_seed) cfg.env_seed = cfg.seed;
  }
  if (cmd == "tkprofile" && !cfg.env_seed) cfg.env_seed = cfg.seed;

  if (cmd == "gaps") {
    default_to(cfg.replicas, std::uint64_t{1'000'000});
  } else if (cmd == "env") {
    require(cfg.lo <= cfg.hi, "--lo must not exceed --hi");
  } else if (cmd == "walk") {
    default_to(cfg.steps, std::uint64_t{10'000});
    if (cfg.K) {
      default_to(cfg.replicas, std::uint64_t{1000});
      default_to(cfg.step_cap, static_cast<std::uint64_t>(100 * *cfg.K * *cfg.K));
      require(cfg.step_cap >= static_cast<std::uint64_t>(*cfg.K), "--step-cap must be >= --K");
    }
  } else if (cmd == "speed" || cmd == "regime") {
    if (cmd == "regime") {
      default_to(cfg.steps, std::uint64_t{1'000'000});
      if (cfg.M_list.empty()) cfg.M_list = {1, 3, 20};
    }
    default_to(cfg.steps, std::uint64_t{100'000});
    default_to(cfg.replicas, std::uint64_t{200});
    if (cfg.checkpoints.empty()) {
      for (std::uint64_t d : {100u, 10u, 1u}) {
        if (cfg.steps / d > 0) cfg.checkpoints.push_back(cfg.steps / d);
      }
    }
    std::sort(cfg.checkpoints.begin(), cfg.checkpoints.end());
    cfg.checkpoints.erase(std::unique(cfg.checkpoints.begin(), cfg.checkpoints.end()),
                          cfg.checkpoints.end());
    require(cfg.checkpoints.front() >= 1, "--checkpoints must be positive");
    require(cfg.checkpoints.back() <= cfg.steps, "--checkpoints must not exceed --steps");
  } else if (cmd == "crossing") {
    require(cfg.n.has_value(), "crossing needs --n");
    default_to(cfg.replicas, std::uint64_t{10'000});
    require(cfg.replicas >= 100, "crossing needs --replicas >= 100");
    const std::uint64_t threshold = std::uint64_t{1} << (2 * *cfg.n);
    default_to(cfg.step_cap, 100 * threshold);
    require(cfg.step_cap >= threshold, "--step-cap must be >= 4^n");
  } else if (cmd == "renewal") {
    if (!cfg.K) cfg.K = 1'000'000;
    default_to(cfg.replicas, std::uint64_t{100});
  } else if (cmd == "tkprofile") {
    if (!cfg.K_max) cfg.K_max = 10'000;
    default_to(cfg.step_cap, std::uint64_t{1'000'000'000});
  } else if (cmd == "oracle") {
    require(cfg.n.has_value(), "oracle needs --n");
    require(*cfg.n <= 12, "oracle supports --n <= 12");
  }
  return cfg;
}

std::string RunConfig::to_comment() const {
  std::ostringstream s;
  s << "cookiewalk=" << kVersion << " command=" << command << " epsilon=" << format_double(epsilon)
    << " p=" << format_double(p);
  if (!variant.empty()) s << " variant=" << variant;
  if (M) s << " M=" << *M;
  if (n) s << " n=" << *n;
  if (K) s << " K=" << *K;
  if (K_max) s << " K-max=" << *K_max;
  s << " steps=" << steps << " step-cap=" << step_cap << " replicas=" << replicas << " seed=" << seed;
  if (env_seed) s << " env-seed=" << *env_seed;
  s << " lo=" << lo << " hi=" << hi << " every=" << every << " c=" << format_double(c);
  if (!checkpoints.empty()) s << " checkpoints=" << join(checkpoints);
  if (!M_list.empty()) s << " M-list=" << join(M_list);
  s << " max-censored-fraction=" << format_double(max_censored_fraction)
    << " plot=" << (plot ? "true" : "false");
  return s.str();
}

RunConfig RunConfig::from_comment(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  std::vector<std::string> args;
  while (in >> token) {
    if (token == "#") continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("malformed config token: " + token);
    const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    if (key == "cookiewalk") continue;
    if (key == "command") {
      args.insert(args.begin(), value);
    } else {
      args.push_back("--" + key + "=" + value);
    }
  }
  return parse_config(args);
}

namespace {

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out)
      : cfg_(cfg), out_(out), dir_(cfg.out_path), threads_(resolve_threads(cfg.threads)),
        comment_(cfg.to_comment()) {}

  unsigned threads() const noexcept { return threads_; }

  void emit(const std::string& stem, const Table& table, const std::string& x, const std::string& y) {
    out_ << "wrote " << write_file(dir_, stem + ".csv", table.to_csv(comment_)).string() << "\n";
    if (cfg_.plot) {
      const std::string svg = render_svg(table, x, y, cfg_.command + ": " + y + " vs " + x);
      out_ << "wrote " << write_file(dir_, stem + ".svg", svg).string() << "\n";
    }
  }

  template <class T>
  void report(const std::string& key, const T& value) {
    if constexpr (std::is_floating_point_v<T>) {
      out_ << key << "=" << format_double(value) << "\n";
    } else {
      out_ << key << "=" << value << "\n";
    }
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::filesystem::path dir_;
  unsigned threads_;
  std::string comment_;
};

EnvDescriptor descriptor(const RunConfig& cfg) {
  EnvDescriptor d;
  d.variant = cfg.variant;
  d.p = cfg.p;
  if (cfg.variant == "homogeneous") d.cookies = cfg.M;
  if (cfg.variant == "counterexample") {
    d.epsilon = cfg.epsilon;
    d.env_seed = cfg.env_seed;
  }
  return d;
}

int censoring_status(const RunConfig& cfg, std::uint64_t censored, std::uint64_t total,
                     std::ostream& err) {
  const double fraction = total ? static_cast<double>(censored) / static_cast<double>(total) : 0.0;
  if (fraction > cfg.max_censored_fraction) {
    err << "error: censored fraction " << format_double(fraction) << " exceeds "
        << format_double(cfg.max_censored_fraction) << "\n";
    return kRuntimeError;
  }
  return kOk;
}

void add_ci(Table::Row& row, const EstimateCI& e) { row << e.point << e.std_error << e.low << e.high; }

int run_gaps(const RunConfig& cfg, Session& s) {
  const GapDistribution dist(cfg.epsilon);
  Stream rng(cfg.seed);
  std::map<int, std::uint64_t> counts;
  MeanAccumulator mean;
  for (std::uint64_t i = 0; i < cfg.replicas; ++i) {
    const auto z = dist.sample(rng);
    ++counts[RenewalLayout::exponent_of(z)];
    mean.add(static_cast<double>(z));
  }
  Table t({"exponent", "gap", "count", "empirical_pmf", "std_error", "pmf"});
  const int top = counts.empty() ? 2 : counts.rbegin()->first;
  for (int k = 2; k <= top; ++k) {
    const auto e = proportion_estimate(counts.count(k) ? counts[k] : 0, cfg.replicas);
    t.row() << k << (std::int64_t{1} << k) << (counts.count(k) ? counts[k] : std::uint64_t{0}) << e.point
            << e.std_error << dist.pmf(k);
  }
  s.emit("gaps", t, "exponent", "empirical_pmf");
  s.report("mean_gap", mean.mean());
  s.report("expected_gap", dist.expected_gap());
  return kOk;
}

int run_env(const RunConfig& cfg, Session& s) {
  const auto d = descriptor(cfg);
  const auto env = d.build(cfg.seed);
  Table t({"site", "is_cookie_site"});
  for (const auto& r : window_dump(env, cfg.lo, cfg.hi)) t.row() << r.site << r.is_cookie_site;
  s.emit("env", t, "site", "is_cookie_site");
  s.report("descriptor", d.to_string());
  return kOk;
}

int run_walk(const RunConfig& cfg, Session& s, std::ostream& err) {
  const auto env = descriptor(cfg).build(cfg.seed);
  Walker w(env, 0, Stream(derive_seed(cfg.seed, {0})), cfg.every);
  for (std::uint64_t i = 0; i < cfg.steps; ++i) w.step();
  Table traj({"step", "position"});
  for (const auto& pt : w.trajectory()) traj.row() << pt.step << pt.position;
  s.emit("trajectory", traj, "step", "position");
  s.report("final_position", w.position());
  if (!cfg.K) return kOk;

  const auto records = parallel_map<FirstPassageRecord>(cfg.replicas, s.threads(), [&](std::size_t i) {
    return first_passage(0, env, *cfg.K, cfg.step_cap, Stream(derive_seed(cfg.seed, {i, 1})));
  });
  Table fp({"replica", "target", "hitting_time", "censored"});
  std::uint64_t censored = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    fp.row() << static_cast<std::uint64_t>(i) << records[i].target << records[i].hitting_time
             << records[i].censored();
    censored += records[i].censored();
  }
  s.emit("first_passage", fp, "replica", "hitting_time");
  s.report("censored", censored);
  return censoring_status(cfg, censored, records.size(), err);
}

int run_speed(const RunConfig& cfg, Session& s) {
  const auto est = speed_estimate(descriptor(cfg), cfg.steps, cfg.checkpoints, cfg.replicas, cfg.seed,
                                  s.threads());
  Table t({"step", "mean_ratio", "std_error", "ci_low", "ci_high", "positive_fraction", "positive_low",
           "positive_high"});
  for (std::size_t i = 0; i < est.checkpoints.size(); ++i) {
    auto row = t.row();
    row << est.checkpoints[i];
    add_ci(row, est.ratio[i]);
    row << est.positive[i].point << est.positive[i].low << est.positive[i].high;
  }
  s.emit("speed", t, "step", "mean_ratio");
  s.report("final_mean_ratio", est.ratio.back().point);
  return kOk;
}

int run_crossing(const RunConfig& cfg, Session& s, std::ostream& err) {
  const int n = *cfg.n;
  CrossingTailOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.step_cap = cfg.step_cap;
  opts.threads = s.threads();
  const auto r = estimate_crossing_tail(n, cfg.p, cfg.replicas, cfg.seed, opts);

  Table samples({"replica", "gap", "crossing_time", "censored", "slow"});
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& x = r.samples[i];
    samples.row() << static_cast<std::uint64_t>(i) << x.gap << x.time << !x.time
                  << (!x.time || *x.time > r.threshold);
  }
  s.emit("crossing", samples, "replica", "crossing_time");

  Table summary({"n", "p", "threshold", "step_cap", "replicas", "successes", "censored", "estimate",
                 "std_error", "wilson_low", "wilson_high", "dp_tail"});
  {
    auto row = summary.row();
    row << n << cfg.p << r.threshold << r.step_cap << cfg.replicas << r.successes << r.censored;
    add_ci(row, r.estimate);
    row << r.dp_tail;
  }
  s.emit("crossing_summary", summary, "n", "estimate");

  const auto coupled = parallel_map<CoupledResult>(cfg.replicas, s.threads(), [&](std::size_t i) {
    return coupled_run(cfg.p, n, cfg.step_cap, Stream(derive_seed(cfg.seed, {i, 2})), cfg.epsilon);
  });
  Table ct({"replica", "n", "reflected_time", "erw_time", "ever_split"});
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < coupled.size(); ++i) {
    const auto& c = coupled[i];
    ct.row() << static_cast<std::uint64_t>(i) << n << c.reflected_time << c.erw_time << c.ever_split;
    violations += c.domination_violations;
  }
  s.emit("coupling", ct, "replica", "erw_time");

  s.report("estimate", r.estimate.point);
  s.report("wilson_low", r.estimate.low);
  s.report("wilson_high", r.estimate.high);
  s.report("dp_tail", r.dp_tail);
  s.report("domination_violations", violations);
  if (violations > 0) {
    err << "error: coupling domination violated on " << violations << " steps\n";
    return kRuntimeError;
  }
  return censoring_status(cfg, r.censored, cfg.replicas, err);
}

int run_renewal(const RunConfig& cfg, Session& s) {
  const auto k = derived_constants(cfg.epsilon);
  const auto counts = parallel_map<RenewalCounts>(cfg.replicas, s.threads(), [&](std::size_t i) {
    const RenewalLayout layout(cfg.epsilon, derive_seed(cfg.seed, {i}), false);
    return renewal_counts(layout, *cfg.K);
  });
  const double horizon = static_cast<double>(*cfg.K);
  Table totals({"replica", "env_seed", "K", "total", "density", "inverse_expected_gap"});
  Table by_n({"replica", "n", "count", "density", "floor"});
  MeanAccumulator density;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& c = counts[i];
    totals.row() << static_cast<std::uint64_t>(i) << derive_seed(cfg.seed, {i}) << *cfg.K << c.total
                 << static_cast<double>(c.total) / horizon << 1.0 / k.expected_gap;
    density.add(static_cast<double>(c.total) / horizon);
    const int top = c.by_exponent.empty() ? 1 : c.by_exponent.rbegin()->first;
    for (int e = 2; e <= top; ++e) {
      by_n.row() << static_cast<std::uint64_t>(i) << e << c.count(e)
                 << static_cast<double>(c.count(e)) / horizon
                 << k.alpha * std::pow(4.0, -cfg.epsilon * e);
    }
  }
  s.emit("renewal", totals, "replica", "density");
  s.emit("renewal_by_exponent", by_n, "n", "density");
  s.report("mean_density", density.mean());
  s.report("inverse_expected_gap", 1.0 / k.expected_gap);
  return kOk;
}

int run_tkprofile(const RunConfig& cfg, Session& s, std::ostream& err) {
  ProfileOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.p = cfg.p;
  const auto prof = tk_over_k_profile(*cfg.env_seed, cfg.seed, *cfg.K_max, cfg.step_cap, opts);
  Table t({"K", "hitting_time", "censored", "ratio", "running_max"});
  std::uint64_t censored = 0;
  for (const auto& pt : prof.first_passage) {
    t.row() << pt.target << pt.hitting_time << !pt.hitting_time << pt.ratio << pt.running_max;
    censored += !pt.hitting_time;
  }
  s.emit("tkprofile", t, "K", "running_max");
  Table cp({"step", "position", "ratio"});
  for (const auto& c : prof.checkpoints) cp.row() << c.step << c.position << c.ratio;
  s.emit("checkpoints", cp, "step", "ratio");
  const int n = cfg.n.value_or(2);
  s.report("running_max", prof.first_passage.back().running_max);
  s.report("threshold_n" + std::to_string(n), cfg.c * std::pow(4.0, (1.0 - cfg.epsilon) * n));
  s.report("censored_targets", censored);
  return censoring_status(cfg, censored, prof.first_passage.size(), err);
}

int run_regime(const RunConfig& cfg, Session& s) {
  Table t({"M", "step", "mean_ratio", "std_error", "ci_low", "ci_high", "positive_fraction"});
  for (int m : cfg.M_list) {
    EnvDescriptor d;
    d.variant = "homogeneous";
    d.p = cfg.p;
    d.cookies = m;
    const auto est = speed_estimate(d, cfg.steps, cfg.checkpoints, cfg.replicas, cfg.seed, s.threads());
    for (std::size_t i = 0; i < est.checkpoints.size(); ++i) {
      auto row = t.row();
      row << m << est.checkpoints[i];
      add_ci(row, est.ratio[i]);
      row << est.positive[i].point;
    }
    s.report("M" + std::to_string(m) + "_final_mean_ratio", est.ratio.back().point);
  }
  s.emit("regime", t, "step", "mean_ratio");
  return kOk;
}

int run_oracle(const RunConfig& cfg, Session& s) {
  const int n = *cfg.n;
  const int m = 1 << n;
  const std::uint64_t threshold = std::uint64_t{1} << (2 * n);
  const auto dp = dp_first_passage_reflected(m, std::max<std::uint64_t>(threshold, 50ULL * m * m));
  Table t({"m", "threshold", "tail_probability", "mean_hitting_time"});
  for (std::uint64_t k = 0; k <= threshold; ++k) t.row() << m << k << dp.tail_at(k) << dp.mean_hitting_time;
  s.emit("oracle", t, "threshold", "tail_probability");

  const double bm = bm_two_sided_tail(1.0);
  Table donsker({"n", "m", "threshold", "dp_tail", "bm_tail", "abs_gap"});
  for (int e = 2; e <= std::max(n, 7); ++e) {
    const std::uint64_t th = std::uint64_t{1} << (2 * e);
    const double tail = dp_first_passage_reflected(1 << e, th).tail_at(th);
    donsker.row() << e << (1 << e) << th << tail << bm << std::abs(tail - bm);
  }
  s.emit("donsker", donsker, "n", "dp_tail");
  s.report("tail_at_threshold", dp.tail_at(threshold));
  s.report("mean_hitting_time", dp.mean_hitting_time);
  s.report("bm_two_sided_tail_1", bm);
  s.report("one_minus_normal_cdf_1", 1.0 - normal_cdf(1.0));
  return kOk;
}

int run_constants(const RunConfig& cfg, Session& s) {
  const auto k = derived_constants(cfg.epsilon);
  const GapDistribution dist(cfg.epsilon);
  const std::vector<std::pair<std::string, double>> values = {
      {"epsilon", k.epsilon},
      {"ratio_r", dist.ratio()},
      {"gamma", k.gamma},
      {"expected_gap", k.expected_gap},
      {"inverse_expected_gap", 1.0 / k.expected_gap},
      {"alpha", k.alpha},
      {"beta_floor", k.beta_floor},
      {"alpha_beta_half", k.c_threshold},
      {"c", cfg.c},
      {"c_times_4_pow_2_one_minus_epsilon", cfg.c * std::pow(4.0, 2.0 * (1.0 - cfg.epsilon))},
      {"bm_two_sided_tail_1", bm_two_sided_tail(1.0)},
      {"one_minus_normal_cdf_1", 1.0 - normal_cdf(1.0)},
  };
  Table t({"key", "value"});
  for (const auto& [key, v] : values) {
    t.row() << key << v;
    s.report(key, v);
  }
  s.emit("constants", t, "key", "value");
  return kOk;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session s(cfg, out);
  const std::string& c = cfg.command;
  if (c == "gaps") return run_gaps(cfg, s);
  if (c == "env") return run_env(cfg, s);
  if (c == "walk") return run_walk(cfg, s, err);
  if (c == "speed") return run_speed(cfg, s);
  if (c == "crossing") return run_crossing(cfg, s, err);
  if (c == "renewal") return run_renewal(cfg, s);
  if (c == "tkprofile") return run_tkprofile(cfg, s, err);
  if (c == "regime") return run_regime(cfg, s);
  if (c == "oracle") return run_oracle(cfg, s);
  if (c == "constants") return run_constants(cfg, s);
  throw UsageError("unknown command: " + c);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kUsageError;
  }
  RunConfig cfg;
  try {
    cfg = resolve(parse_config(args));
  } catch (const CLI::CallForHelp&) {
    RunConfig scratch;
    CLI::App app{"Excited random walk experiments", "cookiewalk"};
    build_app(app, scratch);
    out << usage() << "\n" << app.help();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << usage();
    return kUsageError;
  }
  try {
    return dispatch(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace cookiewalk::cli
