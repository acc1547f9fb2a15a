#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cookiewalk/experiments.hpp"
#include "cookiewalk/oracle.hpp"
#include "cookiewalk/walker.hpp"

namespace py = pybind11;
using namespace cookiewalk;

namespace {

CookieEnvironment make_environment(const std::string& descriptor, std::uint64_t fallback_seed) {
  return EnvDescriptor::parse(descriptor).build(fallback_seed);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Excited random walks in cookie environments";

  m.def("gamma_of_epsilon", &gamma_of_epsilon, py::arg("epsilon"));
  m.def("derive_seed", [](std::uint64_t seed, const std::vector<std::uint64_t>& coords) {
    return derive_seed(seed, coords.begin(), coords.end());
  }, py::arg("seed"), py::arg("coords"));

  py::class_<GapDistribution>(m, "GapDistribution")
      .def(py::init<double>(), py::arg("epsilon"))
      .def_property_readonly("epsilon", &GapDistribution::epsilon)
      .def_property_readonly("gamma", &GapDistribution::gamma)
      .def_property_readonly("ratio", &GapDistribution::ratio)
      .def("pmf", &GapDistribution::pmf, py::arg("exponent"))
      .def("tail", &GapDistribution::tail, py::arg("exponent"))
      .def("expected_gap", &GapDistribution::expected_gap)
      .def("sample", [](const GapDistribution& d, std::size_t count, std::uint64_t seed) {
        Stream rng(seed);
        std::vector<std::int64_t> out(count);
        for (auto& z : out) z = d.sample(rng);
        return out;
      }, py::arg("count"), py::arg("seed"));

  py::enum_<Side>(m, "Side").value("right", Side::right).value("left", Side::left);

  py::class_<RenewalLayout, std::shared_ptr<RenewalLayout>>(m, "RenewalLayout")
      .def(py::init<double, std::uint64_t, bool>(), py::arg("epsilon"), py::arg("env_seed"),
           py::arg("draw_shift") = true)
      .def_property_readonly("env_seed", &RenewalLayout::env_seed)
      .def_property_readonly("shift", &RenewalLayout::shift)
      .def("gap", &RenewalLayout::gap, py::arg("side"), py::arg("index"))
      .def("right_sum", &RenewalLayout::right_sum, py::arg("index"))
      .def("left_sum", &RenewalLayout::left_sum, py::arg("index"))
      .def("is_partial_sum", &RenewalLayout::is_partial_sum, py::arg("y"));

  py::class_<CookieEnvironment>(m, "CookieEnvironment")
      .def_static("homogeneous", &CookieEnvironment::homogeneous, py::arg("cookies"), py::arg("p"))
      .def_static("counterexample", [](std::shared_ptr<RenewalLayout> layout, double p) {
        return CookieEnvironment::counterexample(std::move(layout), p);
      }, py::arg("layout"), py::arg("p"))
      .def_static("uniform", &CookieEnvironment::uniform, py::arg("p"))
      .def_static("from_descriptor", &make_environment, py::arg("descriptor"), py::arg("fallback_seed") = 1)
      .def("probability", &CookieEnvironment::probability, py::arg("site"), py::arg("visit"))
      .def("is_cookie_site", &CookieEnvironment::is_cookie_site, py::arg("site"))
      .def_property_readonly("bias", &CookieEnvironment::bias)
      .def("window", [](const CookieEnvironment& env, Site lo, Site hi) {
        std::vector<std::pair<Site, bool>> out;
        for (const auto& r : window_dump(env, lo, hi)) out.emplace_back(r.site, r.is_cookie_site);
        return out;
      }, py::arg("lo"), py::arg("hi"));

  m.def("walk", [](const CookieEnvironment& env, std::uint64_t steps, std::uint64_t seed, Site start) {
    Walker w(env, start, Stream(seed), 1);
    for (std::uint64_t i = 0; i < steps; ++i) w.step();
    std::vector<Site> out;
    out.reserve(w.trajectory().size());
    for (const auto& pt : w.trajectory()) out.push_back(pt.position);
    return out;
  }, py::arg("env"), py::arg("steps"), py::arg("seed"), py::arg("start") = 0,
     "Positions Y_0, ..., Y_steps.");

  m.def("first_passage", [](const CookieEnvironment& env, Site target, std::uint64_t cap, std::uint64_t seed,
                            Site start) {
    return first_passage(start, env, target, cap, Stream(seed)).hitting_time;
  }, py::arg("env"), py::arg("target"), py::arg("step_cap"), py::arg("seed"), py::arg("start") = 0,
     "Hitting time of target, or None when censored.");

  py::class_<CoupledResult>(m, "CoupledResult")
      .def_readonly("reflected_time", &CoupledResult::reflected_time)
      .def_readonly("erw_time", &CoupledResult::erw_time)
      .def_readonly("ever_split", &CoupledResult::ever_split)
      .def_readonly("steps", &CoupledResult::steps)
      .def_readonly("domination_violations", &CoupledResult::domination_violations);

  m.def("coupled_run", [](double p, int exponent, std::uint64_t cap, std::uint64_t seed, double epsilon) {
    return coupled_run(p, exponent, cap, Stream(seed), epsilon);
  }, py::arg("p"), py::arg("exponent"), py::arg("step_cap"), py::arg("seed"), py::arg("epsilon") = 0.75);

  py::class_<FirstPassageDistribution>(m, "FirstPassageDistribution")
      .def_readonly("level", &FirstPassageDistribution::level)
      .def_readonly("horizon", &FirstPassageDistribution::horizon)
      .def_readonly("tail", &FirstPassageDistribution::tail)
      .def_readonly("mean_hitting_time", &FirstPassageDistribution::mean_hitting_time)
      .def_readonly("mean_is_lower_bound", &FirstPassageDistribution::mean_is_lower_bound)
      .def("tail_at", &FirstPassageDistribution::tail_at, py::arg("t"));

  m.def("dp_first_passage_reflected", &dp_first_passage_reflected, py::arg("level"), py::arg("horizon") = 0);
  m.def("bm_two_sided_tail", &bm_two_sided_tail, py::arg("t"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("derived_constants", [](double eps) {
    const auto c = derived_constants(eps);
    return py::dict(py::arg("epsilon") = c.epsilon, py::arg("gamma") = c.gamma,
                    py::arg("expected_gap") = c.expected_gap, py::arg("alpha") = c.alpha,
                    py::arg("beta_floor") = c.beta_floor, py::arg("c_threshold") = c.c_threshold);
  }, py::arg("epsilon"));

  py::class_<EstimateCI>(m, "EstimateCI")
      .def_readonly("point", &EstimateCI::point)
      .def_readonly("replicas", &EstimateCI::replicas)
      .def_readonly("std_error", &EstimateCI::std_error)
      .def_readonly("low", &EstimateCI::low)
      .def_readonly("high", &EstimateCI::high)
      .def("contains", &EstimateCI::contains, py::arg("value"))
      .def("__repr__", [](const EstimateCI& e) {
        return "EstimateCI(point=" + std::to_string(e.point) + ", low=" + std::to_string(e.low) +
               ", high=" + std::to_string(e.high) + ")";
      });

  m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("trials"), py::arg("level") = 0.95);

  py::class_<CrossingTail>(m, "CrossingTail")
      .def_readonly("exponent", &CrossingTail::exponent)
      .def_readonly("threshold", &CrossingTail::threshold)
      .def_readonly("step_cap", &CrossingTail::step_cap)
      .def_readonly("successes", &CrossingTail::successes)
      .def_readonly("censored", &CrossingTail::censored)
      .def_readonly("estimate", &CrossingTail::estimate)
      .def_readonly("dp_tail", &CrossingTail::dp_tail)
      .def_property_readonly("times", [](const CrossingTail& r) {
        std::vector<std::optional<std::uint64_t>> out;
        for (const auto& s : r.samples) out.push_back(s.time);
        return out;
      });

  m.def("estimate_crossing_tail", [](int n, double p, std::uint64_t replicas, std::uint64_t seed, double epsilon,
                                     std::uint64_t step_cap, unsigned threads) {
    CrossingTailOptions opts;
    opts.epsilon = epsilon;
    opts.step_cap = step_cap;
    opts.threads = threads;
    py::gil_scoped_release release;
    return estimate_crossing_tail(n, p, replicas, seed, opts);
  }, py::arg("n"), py::arg("p"), py::arg("replicas"), py::arg("seed"), py::arg("epsilon") = 0.75,
     py::arg("step_cap") = 0, py::arg("threads") = 1);

  m.def("renewal_counts", [](const RenewalLayout& layout, std::int64_t horizon) {
    const auto c = renewal_counts(layout, horizon);
    return py::make_tuple(c.total, c.by_exponent);
  }, py::arg("layout"), py::arg("K"), "Returns (N(K), {n: N_n(K)}).");

  m.def("tk_over_k_profile", [](std::uint64_t env_seed, std::uint64_t walk_seed, std::int64_t k_max,
                                std::uint64_t step_cap, double epsilon, double p) {
    ProfileOptions opts;
    opts.epsilon = epsilon;
    opts.p = p;
    SpeedProfile prof;
    {
      py::gil_scoped_release release;
      prof = tk_over_k_profile(env_seed, walk_seed, k_max, step_cap, opts);
    }
    std::vector<std::optional<std::uint64_t>> times;
    std::vector<double> running;
    for (const auto& pt : prof.first_passage) {
      times.push_back(pt.hitting_time);
      running.push_back(pt.running_max);
    }
    return py::dict(py::arg("hitting_times") = times, py::arg("running_max") = running);
  }, py::arg("env_seed"), py::arg("walk_seed"), py::arg("K_max"), py::arg("step_cap"), py::arg("epsilon") = 0.75,
     py::arg("p") = 0.75);

  m.def("speed_estimate", [](const std::string& descriptor, std::uint64_t steps,
                             const std::vector<std::uint64_t>& checkpoints, std::uint64_t replicas,
                             std::uint64_t seed, unsigned threads) {
    const auto d = EnvDescriptor::parse(descriptor);
    py::gil_scoped_release release;
    return speed_estimate(d, steps, checkpoints, replicas, seed, threads).ratio;
  }, py::arg("descriptor"), py::arg("steps"), py::arg("checkpoints"), py::arg("replicas"), py::arg("seed"),
     py::arg("threads") = 1, "Y_n/n estimates per checkpoint; descriptor is `key=value` text.");

  m.def("binomial_floor_check", [](int n, std::int64_t horizon, std::uint64_t replicas, double c,
                                   std::uint64_t seed) {
    BinomialFloorOptions opts;
    opts.c = c;
    opts.seed = seed;
    BinomialFloorReport r;
    {
      py::gil_scoped_release release;
      r = binomial_floor_check(n, horizon, replicas, opts);
    }
    return py::dict(py::arg("trials") = r.trials, py::arg("threshold") = r.threshold,
                    py::arg("binomial_tail") = r.binomial_tail, py::arg("empirical") = r.empirical,
                    py::arg("holds") = r.holds());
  }, py::arg("n"), py::arg("K"), py::arg("replicas"), py::arg("c") = 0.04, py::arg("seed") = 1);

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
