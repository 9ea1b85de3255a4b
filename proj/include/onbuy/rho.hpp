#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "onbuy/outcome.hpp"
#include "onbuy/session.hpp"

namespace onbuy {

// rho(k, m): optimal expected cost of buying k of m items whose costs are
// independent with survival (1 - x)^(1/D). D = 1 is the uniform case.
class RhoTable {
 public:
  RhoTable(int k_max, std::uint64_t n_max, double density = 1.0);

  int k_max() const { return k_max_; }
  std::uint64_t n_max() const { return n_max_; }
  double density() const { return density_; }

  // Requires 0 <= k <= k_max and k <= m <= n_max.
  double operator()(int k, std::uint64_t m) const {
    return k == 0 ? 0.0 : rows_[static_cast<std::size_t>(k - 1)][m];
  }

  // Acceptance threshold with `needed` purchases outstanding and `left`
  // items left including the current one. Returns a value above every cost
  // when acceptance is forced (left <= needed).
  double threshold(int needed, std::uint64_t left) const;

  // Test hook for self-test fault injection.
  void poke(int k, std::uint64_t m, double value) { rows_[static_cast<std::size_t>(k - 1)][m] = value; }

 private:
  int k_max_;
  std::uint64_t n_max_;
  double density_;
  std::vector<std::vector<double>> rows_;  // rows_[k-1][m], m < k unused
};

RhoTable compute_rho(int k_max, std::uint64_t n_max);
RhoTable compute_rho_density(int k_max, std::uint64_t n_max, double density);

// One step of the recurrence: value with the current item at stake, given
// a = rho(k-1, m-1) and b = rho(k, m-1).
double rho_step(double a, double b, double density);

// Walks the table column by column in m with O(k_max) memory. The callback
// sees column m as values for k = 0..min(m, k_max).
void sweep_rho(int k_max, std::uint64_t n_max, double density,
               const std::function<void(std::uint64_t m, std::span<const double> column)>& visit);

// Header k,N,rho; 17 significant digits.
void write_rho_csv(std::ostream& out, const RhoTable& table);

struct CkSequence {
  std::vector<double> c;  // c[k-1]
  std::vector<double> d;  // d[k-1] = sqrt(1 + 2 c_k)
  double ck(int k) const { return c[static_cast<std::size_t>(k - 1)]; }
  double dk(int k) const { return d[static_cast<std::size_t>(k - 1)]; }
};

CkSequence compute_ck(int k_max);

// Clique exponents: d_3 = 4/7, d_{r+1} = d_r / (d_r + 2).
double clique_exponent(int r);

// Tracks one k-purchase over a known number of items.
class KPurchaser {
 public:
  KPurchaser(const RhoTable& table, int k, std::uint64_t items);
  bool offer(double cost);
  int needed() const { return needed_; }
  std::uint64_t left() const { return left_; }
  bool done() const { return needed_ == 0; }

 private:
  const RhoTable* table_;
  int needed_;
  std::uint64_t left_;
};

StrategyOutcome run_k_purchase(Session& session, int k, const RhoTable& table);

}  // namespace onbuy
