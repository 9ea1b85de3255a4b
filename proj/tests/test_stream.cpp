#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "onbuy/adversary.hpp"
#include "onbuy/decompose.hpp"
#include "onbuy/session.hpp"
#include "onbuy/universe.hpp"

using namespace onbuy;

TEST_SUITE("stream") {

TEST_CASE("universe sizes") {
  CHECK(ItemUniverse::make(UniverseKind::undirected_edges, 4).size() == 6);
  CHECK(ItemUniverse::make(UniverseKind::directed_arcs, 3).size() == 6);
  CHECK(ItemUniverse::make(UniverseKind::bipartite_edges, 5).size() == 25);
  CHECK(ItemUniverse::make(UniverseKind::abstract_items, 7).size() == 7);
}

TEST_CASE("item ids are a bijection onto the edge set") {
  for (const auto kind : {UniverseKind::undirected_edges, UniverseKind::directed_arcs, UniverseKind::bipartite_edges}) {
    const auto u = ItemUniverse::make(kind, 9);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (ItemId i = 0; i < u.size(); ++i) {
      const auto e = u.endpoints(i);
      CHECK(u.id(e.u, e.v) == i);
      if (kind == UniverseKind::undirected_edges) CHECK(e.u < e.v);
      if (kind != UniverseKind::bipartite_edges) CHECK(e.u != e.v);
      seen.insert({e.u, e.v});
    }
    CHECK(seen.size() == u.size());
  }
}

TEST_CASE("a rom session presents a permutation with costs in [0,1]") {
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 3);
  auto s = make_session(u, OrderModel::parse("rom"), RngHandle{1, 2});
  std::set<ItemId> items;
  while (auto ev = s->next()) {
    CHECK(ev->cost >= 0.0);
    CHECK(ev->cost <= 1.0);
    items.insert(ev->item);
    s->record(false);
  }
  CHECK(items.size() == 3);
}

TEST_CASE("same handle, same stream") {
  const auto u = ItemUniverse::make(UniverseKind::undirected_edges, 12);
  auto a = make_session(u, OrderModel::parse("rom"), RngHandle{42, 7});
  auto b = make_session(u, OrderModel::parse("rom"), RngHandle{42, 7});
  while (auto x = a->next()) {
    const auto y = b->next();
    REQUIRE(y);
    CHECK(x->item == y->item);
    CHECK(x->cost == y->cost);
    a->record(false);
    b->record(false);
  }
  CHECK_FALSE(b->next());
}

TEST_CASE("rom first-item frequency, N=2") {
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 2);
  int first_is_one = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    auto s = make_session(u, OrderModel::parse("rom"), RngHandle{3, static_cast<std::uint64_t>(t)});
    first_is_one += s->next()->item == 1;
  }
  CHECK(std::abs(first_is_one / double(trials) - 0.5) <= 0.01);
}

TEST_CASE("rom permutations are uniform for N=4") {
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 4);
  std::map<std::vector<ItemId>, int> counts;
  const int trials = 240000;
  for (int t = 0; t < trials; ++t) {
    auto s = make_session(u, OrderModel::parse("rom"), RngHandle{8, static_cast<std::uint64_t>(t)});
    std::vector<ItemId> order;
    while (auto ev = s->next()) order.push_back(ev->item), s->record(false);
    ++counts[order];
  }
  REQUIRE(counts.size() == 24);
  const double p = 1.0 / 24, sd = std::sqrt(trials * p * (1 - p));
  for (const auto& [order, c] : counts) CHECK(std::abs(c - trials * p) <= 4 * sd);
}

TEST_CASE("first-inspected cost has mean 1/2 and no position correlation") {
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 10);
  double sum = 0, sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  const int trials = 100000;
  int m = 0;
  for (int t = 0; t < trials; ++t) {
    auto s = make_session(u, OrderModel::parse("rom"), RngHandle{9, static_cast<std::uint64_t>(t)});
    const auto ev = s->next();
    sum += ev->cost;
    // Position against cost on a second inspection.
    s->record(false);
    const auto ev2 = s->next();
    const double x = static_cast<double>(ev2->item), y = ev2->cost;
    sx += x, sy += y, sxy += x * y, sxx += x * x, syy += y * y, ++m;
  }
  CHECK(std::abs(sum / trials - 0.5) <= 0.005);
  const double cov = sxy / m - sx / m * sy / m;
  const double corr = cov / std::sqrt((sxx / m - sx / m * sx / m) * (syy / m - sy / m * sy / m));
  CHECK(std::abs(corr) <= 0.01);
}

TEST_CASE("pom protocol") {
  const auto u = ItemUniverse::make(UniverseKind::abstract_items, 10);
  PomSession s(u, RngHandle{1, 1});
  s.inspect(7);
  s.record(false);
  CHECK_THROWS_AS(s.inspect(7), ProtocolViolation);
  std::set<double> costs;
  costs.insert(s.inspect(0).cost);
  s.record(true);
  while (auto ev = s.next()) costs.insert(ev->cost), s.record(false);
  CHECK(costs.size() == 9);
  CHECK(s.position() == 10);
}

TEST_CASE("identity adversary follows item order") {
  const auto u = ItemUniverse::make(UniverseKind::undirected_edges, 6);
  auto s = make_session(u, OrderModel::parse("aom:identity"), RngHandle{2, 2});
  ItemId expect = 0;
  while (auto ev = s->next()) {
    CHECK(ev->item == expect++);
    s->record(false);
  }
  CHECK(expect == u.size());
}

TEST_CASE("endpoints-last presents the edges at 0 and n-1 last") {
  const std::uint32_t n = 4;
  const auto u = ItemUniverse::make(UniverseKind::undirected_edges, n);
  auto s = make_session(u, OrderModel::parse("aom:endpoints-last"), RngHandle{4, 4});
  std::vector<Endpoints> seen;
  while (auto ev = s->next()) seen.push_back(u.endpoints(ev->item)), s->record(false);
  REQUIRE(seen.size() == 6);
  const auto touches = [&](Endpoints e) { return e.u == 0 || e.v == 0 || e.u == n - 1 || e.v == n - 1; };
  // 2(n-2)+1 = 5 edges meet the endpoints; only (1,2) avoids them.
  CHECK_FALSE(touches(seen[0]));
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(touches(seen[i]));
}

TEST_CASE("vertex-sweep moves on when the purchaser buys nothing") {
  const std::uint32_t n = 7;
  const auto u = ItemUniverse::make(UniverseKind::undirected_edges, n);
  auto s = make_session(u, OrderModel::parse("aom:vertex-sweep"), RngHandle{5, 5});
  std::set<ItemId> all;
  std::vector<Endpoints> first;
  while (auto ev = s->next()) {
    if (first.size() < n - 1) first.push_back(u.endpoints(ev->item));
    all.insert(ev->item);
    s->record(false);
  }
  CHECK(all.size() == u.size());
  // The first n-1 presentations share one vertex.
  std::map<Vertex, int> hits;
  for (const auto& e : first) ++hits[e.u], ++hits[e.v];
  CHECK(std::any_of(hits.begin(), hits.end(), [&](const auto& h) { return h.second == int(n - 1); }));
}

TEST_CASE("decompose keeps the minimum") {
  Rng rng(RngHandle{6, 0});
  const auto top = decompose_min_of_m(1.0, 3, rng);
  CHECK(top == std::vector<double>{1.0, 1.0, 1.0});
  const auto zero = decompose_min_of_m(0.0, 10, rng);
  CHECK(*std::min_element(zero.begin(), zero.end()) == 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform();
    const auto z = decompose_min_of_m(x, 10, rng);
    CHECK(*std::min_element(z.begin(), z.end()) == x);
  }
}

TEST_CASE("decomposed coordinates follow the latent law given the cost") {
  // Unconditionally each Z_j (j >= 2) given X = x has survival S(z)/S(x),
  // so integrating over X uniform gives Pr(Z_j >= z) = E[min(1, S(z)/S(X))].
  const int m = 4;
  Rng rng(RngHandle{10, 0});
  std::vector<double> z2;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) z2.push_back(decompose_min_of_m(rng.uniform(), m, rng)[1]);
  std::sort(z2.begin(), z2.end());
  // Oracle CDF by midpoint quadrature over x.
  const auto cdf = [&](double z) {
    const int grid = 4000;
    double s = 0;
    for (int k = 0; k < grid; ++k) {
      const double x = (k + 0.5) / grid;
      s += x >= z ? 1.0 : latent_survival(z, m) / latent_survival(x, m);
    }
    return 1 - s / grid;
  };
  double ks = 0;
  for (int q = 1; q < 200; ++q) {
    const std::size_t i = static_cast<std::size_t>(q) * samples / 200;
    ks = std::max(ks, std::abs(cdf(z2[i]) - double(i) / samples));
  }
  // 1.63/sqrt(n) is the 1% KS critical value.
  CHECK(ks < 1.63 / std::sqrt(double(samples)) + 1e-3);
}

TEST_CASE("latent law: the minimum of m copies is uniform") {
  for (const int m : {1, 3, 10}) {
    for (const double x : {0.1, 0.5, 0.9}) CHECK(std::pow(latent_survival(x, m), m) == doctest::Approx(1 - x));
  }
}

}
