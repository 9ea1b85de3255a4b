// onbuy: threshold tables, constants, simulations, the average-two lower
// bound and the self-test, from the command line.
//
// Exit codes: 0 success, 1 failed self-test or runtime failure, 2 usage.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "onbuy/avg2.hpp"
#include "onbuy/harness.hpp"
#include "onbuy/rho.hpp"
#include "onbuy/selftest.hpp"
#include "onbuy/strategies.hpp"

namespace {

using namespace onbuy;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

struct SimFlags {
  std::string structure;
  std::uint64_t n = 0;
  std::string order = "rom";
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> params;
  std::string out, json;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--structure", f.structure, "Target structure")->required();
  cmd->add_option("--n", f.n, "Vertex count (item count for k-purchase)")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--order", f.order, "rom, pom or aom:<adversary>")->capture_default_str();
  cmd->add_option("--trials", f.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Base seed")->capture_default_str();
  cmd->add_option("--param", f.params, "Strategy parameter key=value (repeatable)");
}

TrialConfig config_of(const SimFlags& f) {
  TrialConfig c;
  c.structure = f.structure;
  c.n = f.n;
  c.order = OrderModel::parse(f.order);
  c.trials = f.trials;
  c.seed = f.seed;
  c.params = parse_params(f.params);
  // Validates structure, order and parameters before any trial runs.
  check_order(strategy_info(c.structure), c.order);
  make_strategy(c.structure, c.n, c.params);
  return c;
}

int cmd_thresholds(int k, std::uint64_t n, double density, const std::string& out) {
  if (k < 1 || static_cast<std::uint64_t>(k) > n) throw UsageError("need 1 <= k <= N");
  if (!(density > 0) || !std::isfinite(density)) throw UsageError("density must be positive");
  const RhoTable table = density == 1.0 ? compute_rho(k, n) : compute_rho_density(k, n, density);
  std::ostringstream s;
  write_rho_csv(s, table);
  emit(out, s.str());
  return 0;
}

int cmd_constants(int k_max, int r_max, const std::string& out) {
  if (k_max < 1) throw UsageError("--k-max must be >= 1");
  if (r_max < 3) throw UsageError("--r-max must be >= 3");
  const CkSequence c = compute_ck(k_max);
  std::ostringstream s;
  s << "name,index,value\n";
  for (int k = 1; k <= k_max; ++k) s << "c," << k << ',' << format_number(c.ck(k)) << '\n';
  for (int k = 1; k <= k_max; ++k) s << "sqrt(1+2c)," << k << ',' << format_number(c.dk(k)) << '\n';
  for (int r = 3; r <= r_max; ++r) s << "d," << r << ',' << format_number(clique_exponent(r)) << '\n';
  emit(out, s.str());
  return 0;
}

std::string json_path_for(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".json");
  return p.string();
}

int cmd_simulate(const SimFlags& f) {
  const TrialConfig c = config_of(f);
  const StatsSummary s = run_trials(c);
  std::ostringstream csv;
  write_summary_csv(csv, c, s);
  const std::string json = summary_json(c, s, theory_bounds(c.structure, c.n, c.params));
  emit(f.out, csv.str());
  const std::string json_path = !f.json.empty() ? f.json : (f.out.empty() || f.out == "-") ? "" : json_path_for(f.out);
  if (!json_path.empty()) emit(json_path, json);
  return 0;
}

int cmd_lowerbound(int n, int iters, double tol, const std::string& out) {
  if (n < 10) throw UsageError("--n must be >= 10");
  if (iters < 1) throw UsageError("--iters must be >= 1");
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  const Avg2Program p = optimize_avg2(n, iters, tol);
  nlohmann::ordered_json j{{"n", p.n},
                           {"objective", p.objective},
                           {"residual", p.residual},
                           {"gradient_norm", p.gradient_norm},
                           {"iterations", p.iterations},
                           {"converged", p.converged}};
  emit(out, j.dump(2) + "\n");
  return 0;
}

// Bounds next to a fresh estimate, one line each.
int cmd_report(const SimFlags& f) {
  const TrialConfig c = config_of(f);
  const StatsSummary s = run_trials(c);
  std::ostringstream r;
  r << c.structure << " n=" << c.n << " order=" << c.order.name() << " trials=" << s.trials << '\n';
  r << "mean " << format_number(s.mean);
  if (s.ci95) r << "  ci95 [" << format_number(s.ci95->first) << ", " << format_number(s.ci95->second) << ']';
  r << "  success " << format_number(s.success_rate) << "  fallback " << format_number(s.fallback_rate) << '\n';
  for (const auto& b : theory_bounds(c.structure, c.n, c.params)) {
    r << "  " << to_string(b.kind) << ' ' << b.name << " = " << format_number(b.value);
    if (b.kind != BoundKind::asymptotic) {
      const bool holds = b.kind == BoundKind::lower ? s.mean >= b.value : s.mean <= b.value;
      r << (holds ? "  (consistent)" : "  (violated by the estimate)");
    } else {
      r << "  (ratio " << format_number(s.mean / b.value) << ')';
    }
    r << "  [" << b.source << "]\n";
  }
  emit(f.out, r.str());
  return 0;
}

int cmd_selftest(const std::string& fault) {
  SelfTestOptions opt;
  if (fault == "rho") {
    opt.corrupt_rho = true;
  } else if (!fault.empty()) {
    throw UsageError("unknown fault '" + fault + "' (known: rho)");
  }
  int failed = 0;
  for (const auto& r : run_selftest(opt)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) std::cout << ": " << r.detail, ++failed;
    std::cout << '\n';
  }
  std::cout << (failed ? std::to_string(failed) + " invariant(s) failed" : std::string("all invariants hold")) << '\n';
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online purchasing of random structures"};
  app.require_subcommand(1);

  int k = 1;
  std::uint64_t big_n = 0;
  double density = 1.0;
  std::string out;
  auto* thresholds = app.add_subcommand("thresholds", "Optimal k-purchase values as CSV");
  thresholds->add_option("--k", k, "Largest purchase count")->required();
  thresholds->add_option("--N", big_n, "Largest item count")->required();
  thresholds->add_option("--density", density, "Cost law density D")->capture_default_str();
  thresholds->add_option("--out", out, "Output file (default stdout)");

  int k_max = 10, r_max = 8;
  auto* constants = app.add_subcommand("constants", "c_k sequence and clique exponents as CSV");
  constants->add_option("--k-max", k_max)->capture_default_str();
  constants->add_option("--r-max", r_max)->capture_default_str();
  constants->add_option("--out", out, "Output file (default stdout)");

  SimFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials; summary CSV and JSON report");
  add_sim_flags(simulate, sim);
  simulate->add_option("--out", sim.out, "CSV file (default stdout); the JSON report goes next to it");
  simulate->add_option("--json", sim.json, "JSON report file");

  int lb_n = 10000, iters = 200;
  double tol = 1e-10;
  auto* lowerbound = app.add_subcommand("lowerbound", "Average-two purchase program");
  lowerbound->add_option("--n", lb_n, "Horizon")->capture_default_str();
  lowerbound->add_option("--iters", iters)->capture_default_str();
  lowerbound->add_option("--tol", tol)->capture_default_str();
  lowerbound->add_option("--out", out, "Output file (default stdout)");

  SimFlags rep;
  auto* report = app.add_subcommand("report", "Estimate compared against known bounds");
  add_sim_flags(report, rep);
  report->add_option("--out", rep.out, "Output file (default stdout)");

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Module invariants at reduced scale");
  selftest->add_option("--inject-fault", fault, "Corrupt a component first (rho)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == thresholds) return cmd_thresholds(k, big_n, density, out);
    if (active == constants) return cmd_constants(k_max, r_max, out);
    if (active == simulate) return cmd_simulate(sim);
    if (active == lowerbound) return cmd_lowerbound(lb_n, iters, tol, out);
    if (active == report) return cmd_report(rep);
    if (active == selftest) return cmd_selftest(fault);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
