#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "onbuy/harness.hpp"
#include "onbuy/rho.hpp"
#include "onbuy/selftest.hpp"

using namespace onbuy;

namespace {

TrialConfig cfg(const std::string& s, std::uint64_t n, const std::string& order, std::uint64_t trials,
                std::uint64_t seed = 1, ParamMap p = {}) {
  return TrialConfig{s, n, OrderModel::parse(order), trials, seed, std::move(p)};
}

bool same(const StatsSummary& a, const StatsSummary& b) {
  return a.trials == b.trials && a.mean == b.mean && a.std_error == b.std_error && a.ci95 == b.ci95 &&
         a.median == b.median && a.success_rate == b.success_rate && a.fallback_rate == b.fallback_rate &&
         a.mean_inspections == b.mean_inspections;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("k-purchase mean agrees with the table") {
  const auto s = run_trials(cfg("k-purchase", 100, "rom", 100000, 3, {{"k", "1"}}));
  REQUIRE(s.std_error);
  CHECK(std::abs(s.mean - RhoTable(1, 100)(1, 100)) <= 3 * *s.std_error);
  CHECK(s.success_rate == 1.0);
}

TEST_CASE("a single trial has no standard error") {
  const auto s = run_trials(cfg("triangle", 100, "rom", 1));
  CHECK_FALSE(s.std_error);
  CHECK_FALSE(s.ci95);
  std::ostringstream csv;
  write_summary_csv(csv, cfg("triangle", 100, "rom", 1), s);
  CHECK(csv.str().find(",NA,") != std::string::npos);
}

TEST_CASE("identical configurations give identical summaries") {
  const auto c = cfg("spanning-tree", 200, "rom", 12, 5);
  CHECK(same(run_trials(c), run_trials(c)));
}

TEST_CASE("worker count does not change the result") {
  const auto c = cfg("bipartite-pm", 60, "aom:identity", 9, 8);
  const auto one = run_trials(c, 1);
  CHECK(same(one, run_trials(c, 2)));
  CHECK(same(one, run_trials(c, 5)));
}

TEST_CASE("ci95 and rates") {
  const auto s = run_trials(cfg("shortest-path", 200, "pom", 30));
  REQUIRE(s.std_error);
  CHECK(s.ci95->first == doctest::Approx(s.mean - 1.96 * *s.std_error));
  CHECK(s.ci95->second == doctest::Approx(s.mean + 1.96 * *s.std_error));
  CHECK(s.success_rate >= 0.0);
  CHECK(s.success_rate <= 1.0);
}

TEST_CASE("summary statistics from hand-made records") {
  std::vector<TrialRecord> r(4);
  r[0].cost = 1, r[1].cost = 2, r[2].cost = 3, r[3].cost = 10;
  r[0].success = r[1].success = r[2].success = true;
  r[3].fallback = true;
  r[0].inspections = 4;
  const auto s = summarize(r);
  CHECK(s.mean == 4.0);
  CHECK(s.median == 2.5);
  // Sample sd of {1,2,3,10} is sqrt(50/3).
  CHECK(*s.std_error == doctest::Approx(std::sqrt(50.0 / 3) / 2));
  CHECK(s.success_rate == 0.75);
  CHECK(s.fallback_rate == 0.25);
  CHECK(s.mean_inspections == 1.0);
}

TEST_CASE("compensated summation keeps small terms") {
  std::vector<TrialRecord> r(1000001);
  r[0].cost = 1e8;
  for (std::size_t i = 1; i < r.size(); ++i) r[i].cost = 1e-9;
  const auto s = summarize(r);
  CHECK(s.mean * double(r.size()) == doctest::Approx(1e8 + 1e-3).epsilon(1e-16));
}

TEST_CASE("doubling trials shrinks the standard error by about 1/sqrt 2") {
  const auto a = run_trials(cfg("k-purchase", 50, "rom", 20000, 4, {{"k", "2"}}));
  const auto b = run_trials(cfg("k-purchase", 50, "rom", 40000, 4, {{"k", "2"}}));
  CHECK(*b.std_error / *a.std_error == doctest::Approx(1 / std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("bad configurations fail before running") {
  CHECK_THROWS_AS(run_trials(cfg("triangle", 100, "aom:identity", 5)), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(cfg("nonesuch", 100, "rom", 5)), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(cfg("triangle", 100, "rom", 0)), std::invalid_argument);
}

TEST_CASE("worker count from the environment") {
  ::setenv("ONBUY_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  ::setenv("ONBUY_THREADS", "0", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("ONBUY_THREADS");
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  std::vector<int> hit(50, 0);
  CHECK_THROWS_WITH(parallel_for(50, 4,
                                 [&](std::uint64_t i) {
                                   hit[i] = 1;
                                   if (i == 7) throw std::runtime_error("seven");
                                 }),
                    "seven");
  std::vector<int> all(100, 0);
  parallel_for(100, 3, [&](std::uint64_t i) { ++all[i]; });
  for (const int v : all) CHECK(v == 1);
}

TEST_CASE("bounds") {
  const auto find = [](const std::vector<BoundRecord>& b, BoundKind kind) {
    std::vector<double> out;
    for (const auto& r : b) {
      if (r.kind == kind) out.push_back(r.value);
    }
    return out;
  };
  const auto tree = theory_bounds("spanning-tree", 2000);
  const auto tree_upper = find(tree, BoundKind::upper);
  CHECK(std::count(tree_upper.begin(), tree_upper.end(), 2 * 1.2020569031595942) == 1);
  const auto tree_lower = find(tree, BoundKind::lower);
  CHECK(std::count(tree_lower.begin(), tree_lower.end(), 1.38) == 1);

  const CkSequence c = compute_ck(3);
  const auto pm = theory_bounds("bipartite-pm", 500);
  CHECK(find(pm, BoundKind::lower) == std::vector<double>{2.0});
  CHECK(find(pm, BoundKind::upper) == std::vector<double>{4 * c.ck(3)});
  const auto ham = theory_bounds("hamilton", 100);
  CHECK(find(ham, BoundKind::lower) == std::vector<double>{c.ck(2)});
  CHECK(find(ham, BoundKind::upper) == std::vector<double>{200.0});
  CHECK(find(theory_bounds("hamilton-directed", 80), BoundKind::upper)[0] == doctest::Approx(20.944).epsilon(1e-4));

  for (const auto& info : strategy_catalog()) {
    for (const auto& b : theory_bounds(info.name, 1000)) {
      CHECK(std::isfinite(b.value));
      CHECK_FALSE(b.source.empty());
    }
  }
  CHECK_THROWS_AS(theory_bounds("nonesuch", 10), std::invalid_argument);
}

TEST_CASE("exponent fit") {
  std::vector<std::pair<double, double>> pts;
  for (const double n : {500.0, 1000.0, 2000.0, 4000.0}) pts.push_back({n, 3.7 * std::pow(n, -2.0 / 3)});
  const auto f = exponent_fit(pts);
  CHECK(std::abs(f.slope + 2.0 / 3) <= 1e-12);
  CHECK(f.intercept == doctest::Approx(std::log(3.7)));
  CHECK(f.std_error == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(exponent_fit({{10, 2}, {20, 2}, {40, 2}}).slope == doctest::Approx(0.0));
  CHECK_THROWS_AS(exponent_fit({{10, 2}, {20, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(exponent_fit({{10, 2}, {20, 0}, {40, 1}}), std::invalid_argument);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("csv and json output") {
  const auto c = cfg("triangle", 150, "rom", 4, 2);
  const auto s = run_trials(c);
  std::ostringstream csv;
  write_summary_csv(csv, c, s);
  const std::string text = csv.str();
  CHECK(text.rfind("structure,n,order,trials,mean,stderr,median,success_rate,fallback_rate\ntriangle,150,rom,4,", 0) == 0);
  const auto j = nlohmann::json::parse(summary_json(c, s, theory_bounds("triangle", 150)));
  CHECK(j["summary"]["mean"].get<double>() == s.mean);
  CHECK(j["bounds"].size() == 3);
  CHECK(j["config"]["order"] == "rom");
}

TEST_CASE("self-test passes, and names the corrupted invariant") {
  for (const auto& r : run_selftest()) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
  }
  const auto broken = run_selftest({.corrupt_rho = true});
  CHECK_FALSE(broken.front().passed);
  CHECK(broken.front().name.find("monotonicity") != std::string::npos);
}

}
