#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onbuy/session.hpp"
#include "onbuy/strategies.hpp"

namespace onbuy {

struct TrialConfig {
  std::string structure;
  std::uint64_t n = 0;
  OrderModel order;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  ParamMap params;
};

struct TrialRecord {
  double cost = 0.0;
  bool success = false;
  bool fallback = false;
  std::uint64_t inspections = 0;
  std::map<std::string, double> stats;
};

struct StatsSummary {
  std::uint64_t trials = 0;
  double mean = 0.0;
  // Absent for a single trial.
  std::optional<double> std_error;
  std::optional<std::pair<double, double>> ci95;
  double median = 0.0;
  double success_rate = 0.0;
  double fallback_rate = 0.0;
  double mean_inspections = 0.0;
};

// Worker count from ONBUY_THREADS (unset or 0: hardware concurrency).
unsigned worker_count();

// Calls body(i) for i in [0, count) on up to `threads` workers (0: use
// worker_count()). The first exception by index is rethrown after all
// workers stop.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body);

// Trial t runs on RngHandle{seed, t}; the purchaser stream is a fork of it.
// Throws std::invalid_argument before any trial for a bad configuration.
std::vector<TrialRecord> run_trial_records(const TrialConfig& config, unsigned threads = 0);
StatsSummary summarize(const std::vector<TrialRecord>& records);
StatsSummary run_trials(const TrialConfig& config, unsigned threads = 0);

enum class BoundKind { lower, upper, asymptotic };
std::string to_string(BoundKind kind);

struct BoundRecord {
  std::string name;
  double value = 0.0;
  BoundKind kind = BoundKind::asymptotic;
  std::string source;
};

// Known bounds on the price of `structure` at size n. Throws
// std::invalid_argument for an unknown structure.
std::vector<BoundRecord> theory_bounds(const std::string& structure, std::uint64_t n, const ParamMap& params = {});

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;  // of the slope
};

// Least squares of log(mean) on log(n). Needs three points and positive
// means.
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& points);

// 17 significant digits, independent of the locale.
std::string format_number(double x);

void write_summary_csv(std::ostream& out, const TrialConfig& config, const StatsSummary& summary);
// JSON report with the configuration, summary and bounds.
std::string summary_json(const TrialConfig& config, const StatsSummary& summary,
                         const std::vector<BoundRecord>& bounds);

}  // namespace onbuy
