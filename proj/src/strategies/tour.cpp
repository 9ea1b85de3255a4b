// Hamilton cycles through random k-out graphs. Each observed cost is split
// into latent values whose minimum it is; each latent coordinate drives an
// independent 1-purchase (k-purchase for digraphs) at a vertex, so the
// bought edges form a random m-out graph (2-in, 2-out for digraphs).

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onbuy/decompose.hpp"
#include "onbuy/hamilton.hpp"
#include "onbuy/strategies.hpp"

namespace onbuy {

namespace {

class TourPlan : public Plan {
 public:
  TourPlan(const ItemUniverse& u, bool directed, std::uint64_t budget)
      : u_(u), n_(u.vertices()), directed_(directed), budget_(budget), out_(u.vertices()), in_(u.vertices()) {}

  bool complete() const override { return !cycle_.empty(); }
  bool stuck() const override { return final_done_ && cycle_.empty(); }
  std::vector<ItemId> structure() const override {
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < cycle_.size(); ++i) out.push_back(u_.id(cycle_[i], cycle_[(i + 1) % cycle_.size()]));
    return out;
  }
  void annotate(StrategyOutcome& out) const override {
    out.stats["edges_bought"] = static_cast<double>(edges_);
    out.stats["searches"] = static_cast<double>(searches_);
    out.stats["open_choices"] = static_cast<double>(open_);
  }

 protected:
  void add(Vertex a, Vertex b) {
    out_[a].push_back(b);
    in_[b].push_back(a);
    if (!directed_) {
      out_[b].push_back(a);
      in_[a].push_back(b);
    }
    ++edges_;
  }

  // The whole m-out graph is bought before the tour is extracted.
  void finish() {
    if (final_done_) return;
    final_done_ = true;
    ++searches_;
    const HamiltonResult r = find_hamilton_cycle(out_, in_, directed_, budget_);
    if (r.status == HamiltonStatus::found) cycle_ = r.cycle;
  }

  const ItemUniverse& u_;
  std::uint32_t n_;
  bool directed_;
  std::uint64_t budget_;
  Adjacency out_, in_;
  std::uint64_t edges_ = 0, searches_ = 0, open_ = 0;
  bool final_done_ = false;
  std::vector<Vertex> cycle_;
};

class UndirectedTourPlan final : public TourPlan {
 public:
  UndirectedTourPlan(const ItemUniverse& u, int m, const RhoTable& table, std::uint64_t budget, RngHandle latent)
      : TourPlan(u, false, budget), m_(m), table_(table), rng_(latent), left_(u.vertices(), u.vertices() - 1),
        done_(static_cast<std::size_t>(u.vertices()) * m, 0), z_(m), hits_(2 * m) {
    open_ = static_cast<std::uint64_t>(u.vertices()) * m;
  }

  bool decide(const InspectionEvent& ev) override {
    e_ = u_.endpoints(ev.item);
    decompose_min_of_m(ev.cost, m_, rng_, z_.data());
    const auto shift = static_cast<int>(rng_.below(static_cast<std::uint64_t>(m_)));
    hit_count_ = 0;
    for (const Vertex v : {e_.u, e_.v}) {
      const double thr = table_.threshold(1, left_[v]);
      for (int j = 0; j < m_; ++j) {
        const std::size_t slot = static_cast<std::size_t>(v) * m_ + j;
        if (!done_[slot] && z_[(j + shift) % m_] < thr) hits_[hit_count_++] = slot;
      }
    }
    return hit_count_ > 0;
  }

  void commit(const InspectionEvent&, bool bought) override {
    --left_[e_.u];
    --left_[e_.v];
    if (bought) {
      for (int i = 0; i < hit_count_; ++i) done_[hits_[i]] = 1;
      open_ -= static_cast<std::uint64_t>(hit_count_);
      add(e_.u, e_.v);
    }
    if (open_ == 0) finish();
  }

 private:
  int m_;
  const RhoTable& table_;
  Rng rng_;
  std::vector<std::uint32_t> left_;
  std::vector<char> done_;
  std::vector<double> z_;
  std::vector<std::size_t> hits_;
  int hit_count_ = 0;
  Endpoints e_;
};

// m latent values per arc; the first half give the tail's out-choices, the
// second half the head's in-choices. The minimum of m/2 latent values has
// the latent law for m/2, so each side runs a 2-purchase at density m/2.
class DirectedTourPlan final : public TourPlan {
 public:
  DirectedTourPlan(const ItemUniverse& u, int m, const RhoTable& table, std::uint64_t budget, RngHandle latent)
      : TourPlan(u, true, budget), m_(m), table_(table), rng_(latent), out_left_(u.vertices(), u.vertices() - 1),
        in_left_(u.vertices(), u.vertices() - 1), got_out_(u.vertices(), 0), got_in_(u.vertices(), 0), z_(m) {
    open_ = 2 * static_cast<std::uint64_t>(u.vertices()) * kChoices;
  }

  bool decide(const InspectionEvent& ev) override {
    a_ = u_.endpoints(ev.item);
    decompose_min_of_m(ev.cost, m_, rng_, z_.data());
    const auto shift = static_cast<int>(rng_.below(static_cast<std::uint64_t>(m_)));
    double w_out = 2, w_in = 2;
    for (int j = 0; j < m_; ++j) {
      double& w = j < m_ / 2 ? w_out : w_in;
      w = std::min(w, z_[(j + shift) % m_]);
    }
    take_out_ = got_out_[a_.u] < kChoices &&
                w_out < table_.threshold(kChoices - got_out_[a_.u], out_left_[a_.u]);
    take_in_ = got_in_[a_.v] < kChoices && w_in < table_.threshold(kChoices - got_in_[a_.v], in_left_[a_.v]);
    return take_out_ || take_in_;
  }

  void commit(const InspectionEvent&, bool bought) override {
    --out_left_[a_.u];
    --in_left_[a_.v];
    if (bought) {
      if (take_out_) ++got_out_[a_.u], --open_;
      if (take_in_) ++got_in_[a_.v], --open_;
      add(a_.u, a_.v);
    }
    if (open_ == 0) finish();
  }

 private:
  static constexpr int kChoices = 2;
  int m_;
  const RhoTable& table_;
  Rng rng_;
  std::vector<std::uint32_t> out_left_, in_left_;
  std::vector<int> got_out_, got_in_;
  std::vector<double> z_;
  bool take_out_ = false, take_in_ = false;
  Endpoints a_;
};

class TourStrategy final : public Strategy {
 public:
  TourStrategy(const StrategyInfo& info, std::uint32_t n, bool directed, int m, std::uint64_t budget)
      : Strategy(info, ItemUniverse::make(directed ? UniverseKind::directed_arcs : UniverseKind::undirected_edges, n)),
        directed_(directed), m_(m), budget_(budget),
        table_(directed ? 2 : 1, n - 1, directed ? m / 2.0 : static_cast<double>(m)) {}

  StrategyOutcome run(Session& session, RngHandle purchaser) const override {
    const RngHandle latent = purchaser.fork(0x6c6174);
    std::unique_ptr<TourPlan> plan;
    if (directed_) {
      plan = std::make_unique<DirectedTourPlan>(universe(), m_, table_, budget_, latent);
    } else {
      plan = std::make_unique<UndirectedTourPlan>(universe(), m_, table_, budget_, latent);
    }
    auto guard = make_guard(info().name, session);
    return drive(session, *plan, *guard, info().name);
  }

 private:
  bool directed_;
  int m_;
  std::uint64_t budget_;
  RhoTable table_;
};

}  // namespace

std::unique_ptr<Strategy> make_hamilton(const StrategyInfo& info, std::uint32_t n, const Params& p) {
  const bool directed = info.name == "hamilton-directed";
  const auto m = p.integer("m", directed ? 4 : 10);
  const auto budget = p.integer("budget", 10'000'000);
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  if (directed) {
    if (m < 4 || m % 2 != 0) throw std::invalid_argument("hamilton-directed needs an even m >= 4");
    if (n < 3) throw std::invalid_argument("hamilton-directed needs n >= 3");
  } else {
    if (m < 3) throw std::invalid_argument("hamilton needs m >= 3");
    if (n < 4) throw std::invalid_argument("hamilton needs n >= 4");
  }
  return std::make_unique<TourStrategy>(info, n, directed, static_cast<int>(m), static_cast<std::uint64_t>(budget));
}

}  // namespace onbuy
