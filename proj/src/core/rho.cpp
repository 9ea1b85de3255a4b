#include "onbuy/rho.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace onbuy {

double rho_step(double a, double b, double density) {
  const double gap = b - a;
  if (gap <= 0.0) return b;
  if (density == 1.0) {
    if (gap <= 1.0) return b - 0.5 * gap * gap;
    return a + 0.5;
  }
  const double t = gap < 1.0 ? gap : 1.0;
  const double e = (density + 1.0) / density;
  // a + G(t) with G(t) = D/(D+1) (1 - (1-t)^((D+1)/D)).
  return a - density / (density + 1.0) * std::expm1(e * std::log1p(-t));
}

namespace {

double base_value(int k, double density) { return k * density / (density + 1.0); }

void check_dims(int k_max, std::uint64_t n_max, double density) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (static_cast<std::uint64_t>(k_max) > n_max) {
    throw std::invalid_argument("k_max (" + std::to_string(k_max) + ") exceeds N_max (" +
                                std::to_string(n_max) + ")");
  }
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw std::invalid_argument("density must be positive");
  }
}

}  // namespace

RhoTable::RhoTable(int k_max, std::uint64_t n_max, double density)
    : k_max_(k_max), n_max_(n_max), density_(density) {
  check_dims(k_max, n_max, density);
  rows_.assign(static_cast<std::size_t>(k_max), std::vector<double>(n_max + 1, 0.0));
  for (int k = 1; k <= k_max; ++k) {
    auto& row = rows_[static_cast<std::size_t>(k - 1)];
    const auto* prev = k > 1 ? &rows_[static_cast<std::size_t>(k - 2)] : nullptr;
    row[static_cast<std::size_t>(k)] = base_value(k, density);
    for (std::uint64_t m = static_cast<std::uint64_t>(k) + 1; m <= n_max; ++m) {
      const double a = prev ? (*prev)[m - 1] : 0.0;
      row[m] = rho_step(a, row[m - 1], density);
    }
  }
}

double RhoTable::threshold(int needed, std::uint64_t left) const {
  if (needed <= 0) return -1.0;
  if (left <= static_cast<std::uint64_t>(needed)) return 2.0;
  if (needed > k_max_ || left - 1 > n_max_) {
    throw std::out_of_range("threshold (" + std::to_string(needed) + ", " + std::to_string(left) +
                            ") outside table");
  }
  return (*this)(needed, left - 1) - (*this)(needed - 1, left - 1);
}

RhoTable compute_rho(int k_max, std::uint64_t n_max) { return RhoTable(k_max, n_max, 1.0); }

RhoTable compute_rho_density(int k_max, std::uint64_t n_max, double density) {
  return RhoTable(k_max, n_max, density);
}

void sweep_rho(int k_max, std::uint64_t n_max, double density,
               const std::function<void(std::uint64_t, std::span<const double>)>& visit) {
  check_dims(k_max, n_max, density);
  std::vector<double> col(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<double> next(col.size(), 0.0);
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    const int top = static_cast<int>(std::min<std::uint64_t>(m, static_cast<std::uint64_t>(k_max)));
    next[0] = 0.0;
    for (int k = 1; k <= top; ++k) {
      next[static_cast<std::size_t>(k)] =
          static_cast<std::uint64_t>(k) == m
              ? base_value(k, density)
              : rho_step(col[static_cast<std::size_t>(k - 1)], col[static_cast<std::size_t>(k)], density);
    }
    std::swap(col, next);
    visit(m, std::span<const double>(col.data(), static_cast<std::size_t>(top) + 1));
  }
}

void write_rho_csv(std::ostream& out, const RhoTable& table) {
  out << "k,N,rho\n";
  char buf[64];
  for (int k = 1; k <= table.k_max(); ++k) {
    for (std::uint64_t m = static_cast<std::uint64_t>(k); m <= table.n_max(); ++m) {
      auto res = std::to_chars(buf, buf + sizeof buf, table(k, m), std::chars_format::general, 17);
      out << k << ',' << m << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf))
          << '\n';
    }
  }
}

CkSequence compute_ck(int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  CkSequence s;
  s.c.resize(static_cast<std::size_t>(k_max));
  s.d.resize(static_cast<std::size_t>(k_max));
  s.c[0] = 2.0;
  for (std::size_t k = 1; k < s.c.size(); ++k) {
    s.c[k] = s.c[k - 1] + 1.0 + std::sqrt(1.0 + 2.0 * s.c[k - 1]);
  }
  for (std::size_t k = 0; k < s.c.size(); ++k) s.d[k] = std::sqrt(1.0 + 2.0 * s.c[k]);
  return s;
}

double clique_exponent(int r) {
  if (r < 3) throw std::invalid_argument("clique exponent needs r >= 3");
  double d = 4.0 / 7.0;
  for (int i = 3; i < r; ++i) d = d / (d + 2.0);
  return d;
}

KPurchaser::KPurchaser(const RhoTable& table, int k, std::uint64_t items)
    : table_(&table), needed_(k), left_(items) {
  if (k < 0 || static_cast<std::uint64_t>(k) > items) {
    throw std::invalid_argument("k-purchase needs 0 <= k <= items");
  }
}

bool KPurchaser::offer(double cost) {
  if (left_ == 0) throw std::logic_error("k-purchase offered more items than declared");
  bool take = false;
  if (needed_ > 0) take = cost < table_->threshold(needed_, left_);
  --left_;
  if (take) --needed_;
  return take;
}

StrategyOutcome run_k_purchase(Session& session, int k, const RhoTable& table) {
  KPurchaser buyer(table, k, session.size());
  StrategyOutcome out;
  while (!buyer.done()) {
    auto ev = session.next();
    if (!ev) throw std::logic_error("session exhausted before k purchases");
    const bool take = buyer.offer(ev->cost);
    session.record(take);
    if (take) {
      out.purchased.push_back({ev->item, ev->cost});
      out.structure.push_back(ev->item);
      out.total_cost += ev->cost;
    }
  }
  out.success = true;
  out.inspections = session.position();
  return out;
}

}  // namespace onbuy
