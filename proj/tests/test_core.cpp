#include <doctest.h>

#include <cmath>
#include <sstream>

#include "onbuy/avg2.hpp"
#include "onbuy/rho.hpp"
#include "onbuy/session.hpp"

using namespace onbuy;

namespace {

// Composite Simpson on [a, b]; exact for the piecewise quadratics below.
template <class F>
double simpson(F f, double a, double b, int panels = 64) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST_SUITE("purchase_core") {

TEST_CASE("small values") {
  const RhoTable t(2, 3);
  CHECK(t(1, 1) == 0.5);
  CHECK(std::abs(t(1, 2) - 0.375) <= 1e-12);
  CHECK(t(2, 2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("1-purchase matches quadrature of the optimal policy for N <= 4") {
  // With value c still to come, the item at x is taken iff x < c, so
  // rho_m = int_0^1 min(x, rho_{m-1}) dx split at the kink.
  const RhoTable t(1, 4);
  double prev = simpson([](double x) { return x; }, 0, 1);
  CHECK(std::abs(t(1, 1) - prev) <= 1e-9);
  for (std::uint64_t m = 2; m <= 4; ++m) {
    const double c = prev;
    prev = simpson([](double x) { return x; }, 0, c) + simpson([&](double) { return c; }, c, 1);
    CHECK(std::abs(t(1, m) - prev) <= 1e-9);
  }
}

TEST_CASE("k-purchase recurrence against a closed-form step, several densities") {
  // E min(X + a, b) = a + int_0^{b-a} S(x) dx with S(x) = (1-x)^(1/D).
  for (const double d : {1.0, 4.0, 10.0}) {
    const int kmax = 3;
    const std::uint64_t nmax = 200;
    const RhoTable t(kmax, nmax, d);
    const auto step = [&](double a, double b) {
      const double w = std::min(std::max(b - a, 0.0), 1.0);
      return a + d / (d + 1) * (1 - std::pow(1 - w, (d + 1) / d));
    };
    std::vector<std::vector<double>> o(kmax + 1, std::vector<double>(nmax + 1, 0.0));
    for (int k = 1; k <= kmax; ++k) {
      o[k][k] = k * d / (d + 1);  // every item bought
      for (std::uint64_t m = k + 1; m <= nmax; ++m) o[k][m] = step(o[k - 1][m - 1], o[k][m - 1]);
    }
    for (int k = 1; k <= kmax; ++k) {
      for (std::uint64_t m = k; m <= nmax; ++m) CHECK(std::abs(t(k, m) - o[k][m]) <= 1e-12);
    }
  }
}

TEST_CASE("rho monotone in N and in k") {
  const RhoTable t(10, 3000);
  for (int k = 1; k <= 10; ++k) {
    for (std::uint64_t m = k + 1; m <= 3000; ++m) {
      CHECK(t(k, m) <= t(k, m - 1));
      if (k > 1) CHECK(t(k, m) >= t(k - 1, m));
    }
  }
}

TEST_CASE("rho(k,k) = k/2") {
  const RhoTable t(6, 10);
  for (int k = 1; k <= 6; ++k) CHECK(t(k, k) == doctest::Approx(k / 2.0));
}

TEST_CASE("threshold is forced when no item can be spared") {
  const RhoTable t(3, 50);
  CHECK(t.threshold(2, 2) > 1.0);
  CHECK(t.threshold(1, 1) > 1.0);
  CHECK(t.threshold(1, 2) == doctest::Approx(t(1, 1)));
}

TEST_CASE("c_k sequence") {
  const CkSequence c = compute_ck(3);
  CHECK(c.ck(1) == 2.0);
  CHECK(c.ck(2) == doctest::Approx(3 + std::sqrt(5.0)).epsilon(1e-14));
  CHECK(c.ck(3) == doctest::Approx(c.ck(2) + 1 + std::sqrt(1 + 2 * c.ck(2))).epsilon(1e-14));
  CHECK(std::abs(c.ck(3) - 9.62312214816) < 1e-10);
  CHECK(c.dk(2) == doctest::Approx(std::sqrt(1 + 2 * c.ck(2))));
}

TEST_CASE("c_k quadratic bounds") {
  const CkSequence c = compute_ck(1000);
  for (int k = 1; k <= 1000; ++k) {
    CHECK(c.ck(k) >= k * double(k) / 2);
    CHECK(c.ck(k) <= 2 * double(k) * k);
    CHECK(c.dk(k) > k);
  }
}

TEST_CASE("clique exponents") {
  CHECK(clique_exponent(3) == doctest::Approx(4.0 / 7).epsilon(1e-15));
  CHECK(clique_exponent(4) == doctest::Approx(2.0 / 9).epsilon(1e-15));
  CHECK(clique_exponent(5) == doctest::Approx(0.1).epsilon(1e-15));
  // d_r = 1/(11 * 2^(r-5) - 1) for r >= 5.
  for (int r = 5; r <= 12; ++r) CHECK(clique_exponent(r) == doctest::Approx(1 / (11 * std::pow(2.0, r - 5) - 1)));
}

TEST_CASE("sweep agrees with the full table") {
  const RhoTable t(4, 500, 2.0);
  sweep_rho(4, 500, 2.0, [&](std::uint64_t m, std::span<const double> col) {
    for (std::size_t k = 1; k < col.size(); ++k) CHECK(col[k] == t(static_cast<int>(k), m));
  });
}

TEST_CASE("csv export") {
  std::ostringstream s;
  write_rho_csv(s, RhoTable(1, 3));
  CHECK(s.str() == "k,N,rho\n1,1,0.5\n1,2,0.375\n1,3,0.3046875\n");
}

TEST_CASE("k-purchase Monte Carlo matches the table") {
  const RhoTable t(3, 100);
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 100);
  for (const int k : {1, 3}) {
    double sum = 0, sq = 0;
    const int trials = 40000;
    for (int i = 0; i < trials; ++i) {
      auto s = make_session(u, OrderModel::parse("rom"), RngHandle{77, static_cast<std::uint64_t>(i)});
      const auto out = run_k_purchase(*s, k, t);
      REQUIRE(out.purchased.size() == static_cast<std::size_t>(k));
      sum += out.total_cost, sq += out.total_cost * out.total_cost;
    }
    const double mean = sum / trials, se = std::sqrt((sq / trials - mean * mean) / (trials - 1));
    CHECK(std::abs(mean - t(k, 100)) <= 3 * se);
  }
}

TEST_CASE("k = N buys everything") {
  const RhoTable t(5, 5);
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 5);
  auto s = make_session(u, OrderModel::parse("rom"), RngHandle{1, 1});
  CHECK(run_k_purchase(*s, 5, t).purchased.size() == 5);
}

TEST_CASE("density scaling at moderate N") {
  for (const double d : {4.0, 10.0}) {
    const std::uint64_t n = 20000;
    double value = 0;
    sweep_rho(1, n, d, [&](std::uint64_t m, std::span<const double> col) {
      if (m == n) value = col[1];
    });
    CHECK(n * value == doctest::Approx(2 * d).epsilon(0.03));
  }
}

TEST_CASE("average-two program") {
  for (const int n : {100, 1000}) {
    const Avg2Program p = optimize_avg2(n);
    CHECK(p.residual <= 1e-9);
    CHECK(p.objective >= 2.499);
    CHECK(p.objective <= 2.75);
    CHECK(p.q.front() == 1.0);
  }
}

}
