#include "onbuy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "onbuy/numeric.hpp"
#include "onbuy/rho.hpp"

namespace onbuy {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("ONBUY_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) return hw;
  return static_cast<unsigned>(std::min<unsigned long>(v, 1024));
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex lock;
  std::uint64_t failed_at = count;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (i < failed_at) failed_at = i, error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<TrialRecord> run_trial_records(const TrialConfig& config, unsigned threads) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  check_order(strategy_info(config.structure), config.order);
  const auto strategy = make_strategy(config.structure, config.n, config.params);
  std::vector<TrialRecord> records(config.trials);
  parallel_for(config.trials, threads, [&](std::uint64_t t) {
    const RngHandle handle{config.seed, t};
    const auto session = make_session(strategy->universe(), config.order, handle);
    const StrategyOutcome out = strategy->run(*session, handle.fork(0x7075726368));
    TrialRecord& r = records[t];
    r.cost = out.total_cost;
    r.success = out.success;
    r.fallback = out.fallback_used;
    r.inspections = out.inspections;
    r.stats = out.stats;
  });
  return records;
}

StatsSummary summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no trials to summarize");
  StatsSummary s;
  s.trials = records.size();
  const double count = static_cast<double>(records.size());
  KahanSum cost, inspections;
  std::uint64_t ok = 0, fallback = 0;
  for (const auto& r : records) {
    cost.add(r.cost);
    inspections.add(static_cast<double>(r.inspections));
    ok += r.success;
    fallback += r.fallback;
  }
  s.mean = cost.value() / count;
  s.mean_inspections = inspections.value() / count;
  s.success_rate = static_cast<double>(ok) / count;
  s.fallback_rate = static_cast<double>(fallback) / count;
  if (records.size() > 1) {
    KahanSum sq;
    for (const auto& r : records) sq.add((r.cost - s.mean) * (r.cost - s.mean));
    const double se = std::sqrt(sq.value() / (count - 1) / count);
    s.std_error = se;
    s.ci95 = std::pair{s.mean - 1.96 * se, s.mean + 1.96 * se};
  }
  std::vector<double> costs;
  costs.reserve(records.size());
  for (const auto& r : records) costs.push_back(r.cost);
  std::sort(costs.begin(), costs.end());
  const std::size_t mid = costs.size() / 2;
  s.median = costs.size() % 2 ? costs[mid] : (costs[mid - 1] + costs[mid]) / 2;
  return s;
}

StatsSummary run_trials(const TrialConfig& config, unsigned threads) {
  return summarize(run_trial_records(config, threads));
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::asymptotic: return "asymptotic";
  }
  return "asymptotic";
}

namespace {

constexpr double kZeta3 = 1.2020569031595942;

double param_or(const ParamMap& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  const double v = std::stod(it->second, &used);
  if (used != it->second.size()) throw std::invalid_argument("bad number for " + key);
  return v;
}

}  // namespace

std::vector<BoundRecord> theory_bounds(const std::string& structure, std::uint64_t n, const ParamMap& params) {
  const double nn = static_cast<double>(n);
  const auto known = strategy_catalog();
  if (std::none_of(known.begin(), known.end(), [&](const StrategyInfo& i) { return i.name == structure; })) {
    throw std::invalid_argument("unknown structure '" + structure + "'");
  }
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  std::vector<BoundRecord> out;
  auto add = [&](std::string name, double value, BoundKind kind, std::string source) {
    out.push_back({std::move(name), value, kind, std::move(source)});
  };
  if (structure == "k-purchase") {
    const int k = static_cast<int>(param_or(params, "k", 1));
    if (k < 1 || static_cast<std::uint64_t>(k) > n) throw std::invalid_argument("need 1 <= k <= N");
    const CkSequence c = compute_ck(k);
    double optimum = 0;
    sweep_rho(k, n, 1.0, [&](std::uint64_t m, std::span<const double> col) {
      if (m == n) optimum = col[static_cast<std::size_t>(k)];
    });
    add("optimal value", optimum, BoundKind::asymptotic, "k-purchase optimal stopping recursion");
    add("c_k/N", c.ck(k) / nn, BoundKind::upper, "k-purchase: rho(k,N) <= c_k/N");
    if (k == 1) {
      add("2/(N+1)", 2 / (nn + 1), BoundKind::upper, "1-purchase sandwich");
      add("2(1-10/N)/N", 2 * (1 - 10 / nn) / nn, BoundKind::lower, "1-purchase sandwich, N >= 33");
    } else {
      add("(1-N^-1/2) c_k/N", (1 - 1 / std::sqrt(nn)) * c.ck(k) / nn, BoundKind::lower, "k-purchase sandwich");
    }
  } else if (structure == "shortest-path") {
    add("n^-2/3", std::pow(nn, -2.0 / 3), BoundKind::asymptotic, "ROM and POM path price n^(-2/3 +- o(1))");
    add("n^-1/2", std::pow(nn, -0.5), BoundKind::asymptotic, "AOM path price Omega(n^-1/2)");
  } else if (structure == "triangle") {
    const double d = std::pow(nn, 4.0 / 7);
    add("1/(n^4/7 ln n)", 1 / (d * std::log(nn)), BoundKind::lower, "POM triangle price");
    add("10/n^4/7", 10 / d, BoundKind::upper, "ROM triangle price");
    add("n^-1/2", std::pow(nn, -0.5), BoundKind::asymptotic, "AOM triangle price Omega(n^-1/2)");
  } else if (structure == "paths-len2") {
    const double ell = param_or(params, "ell", std::max(1.0, std::round(std::pow(nn, 4.0 / 7))));
    const double ln = std::log(nn);
    add("(ell/(16 n ln^4 n))^4/3", std::pow(ell / (16 * nn * ln * ln * ln * ln), 4.0 / 3), BoundKind::lower,
        "POM price of ell paths of length two");
    add("6 (ell/n)^4/3", 6 * std::pow(ell / nn, 4.0 / 3), BoundKind::upper, "ROM price of ell paths of length two");
  } else if (structure == "clique") {
    const int r = static_cast<int>(param_or(params, "r", 4));
    if (r < 3) throw std::invalid_argument("r must be >= 3");
    add("n^-d_r", std::pow(nn, -clique_exponent(r)), BoundKind::asymptotic, "ROM K_r price O(n^(-d_r + o(1)))");
  } else if (structure == "spanning-tree") {
    const double alpha = param_or(params, "alpha", 0.69), beta = param_or(params, "beta", 3.5);
    add("zeta(3)", kZeta3, BoundKind::asymptotic, "offline minimum spanning tree");
    add("1.38", 1.38, BoundKind::lower, "POM spanning tree price");
    add("average-two program / 2", 2.73747 / 2, BoundKind::lower, "average-two purchase program");
    add("2 zeta(3)", 2 * kZeta3, BoundKind::upper, "ROM spanning tree price");
    add("tree strategy limit", evaluate_buytree_cost(alpha, beta), BoundKind::upper,
        "giant component analysis of the two-step tree strategy");
  } else if (structure == "arborescence") {
    add("2", 2.0, BoundKind::asymptotic, "POM and ROM arborescence price limit");
  } else if (structure == "bipartite-pm" || structure == "pm-complete") {
    add("2", 2.0, BoundKind::lower, "POM perfect matching price");
    add("4 c_3", 4 * compute_ck(3).ck(3), BoundKind::upper, "AOM perfect matching price via 3-out graphs");
  } else if (structure == "hamilton") {
    add("c_2", compute_ck(2).ck(2), BoundKind::lower, "POM Hamilton cycle price");
    add("200", 200.0, BoundKind::upper, "AOM Hamilton cycle price via 10-out graphs");
  } else if (structure == "hamilton-directed") {
    add("4", 4.0, BoundKind::lower, "POM directed Hamilton cycle cost, w.h.p.");
    add("4 c_2", 4 * compute_ck(2).ck(2), BoundKind::upper, "AOM directed Hamilton cycle cost, w.h.p.");
  }
  return out;
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("exponent fit needs at least three points");
  const double m = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [n, mean] : points) {
    if (!(n > 0) || !(mean > 0)) throw std::invalid_argument("exponent fit needs positive n and means");
    sx += std::log(n);
    sy += std::log(mean);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [n, mean] : points) {
    sxx += (std::log(n) - mx) * (std::log(n) - mx);
    sxy += (std::log(n) - mx) * (std::log(mean) - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("exponent fit needs distinct n");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (const auto& [n, mean] : points) {
    const double e = std::log(mean) - fit.intercept - fit.slope * std::log(n);
    ssr += e * e;
  }
  fit.std_error = std::sqrt(ssr / (m - 2) / sxx);
  return fit;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_summary_csv(std::ostream& out, const TrialConfig& config, const StatsSummary& s) {
  out << "structure,n,order,trials,mean,stderr,median,success_rate,fallback_rate\n";
  out << config.structure << ',' << config.n << ',' << config.order.name() << ',' << s.trials << ','
      << format_number(s.mean) << ',' << (s.std_error ? format_number(*s.std_error) : "NA") << ','
      << format_number(s.median) << ',' << format_number(s.success_rate) << ',' << format_number(s.fallback_rate)
      << '\n';
}

std::string summary_json(const TrialConfig& config, const StatsSummary& s, const std::vector<BoundRecord>& bounds) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["config"] = {{"structure", config.structure},
                 {"n", config.n},
                 {"order", config.order.name()},
                 {"trials", config.trials},
                 {"seed", config.seed},
                 {"params", config.params}};
  ordered_json sum = {{"trials", s.trials}, {"mean", s.mean}};
  sum["stderr"] = s.std_error ? ordered_json(*s.std_error) : ordered_json(nullptr);
  sum["ci95"] = s.ci95 ? ordered_json::array({s.ci95->first, s.ci95->second}) : ordered_json(nullptr);
  sum["median"] = s.median;
  sum["success_rate"] = s.success_rate;
  sum["fallback_rate"] = s.fallback_rate;
  sum["mean_inspections"] = s.mean_inspections;
  j["summary"] = sum;
  ordered_json list = ordered_json::array();
  for (const auto& b : bounds) {
    list.push_back({{"name", b.name}, {"value", b.value}, {"kind", to_string(b.kind)}, {"source", b.source}});
  }
  j["bounds"] = list;
  return j.dump(2) + "\n";
}

}  // namespace onbuy
