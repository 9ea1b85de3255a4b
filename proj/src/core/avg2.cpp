#include "onbuy/avg2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onbuy/numeric.hpp"

namespace onbuy {

namespace {

constexpr double kFloor = 1e-15;

// q holds q_0..q_n with q_0 = 1, q_n = 0.
double survivors(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  KahanSum s;
  s.add(n - 1.0);
  for (int j = 1; j < n; ++j) s.add(-q[static_cast<std::size_t>(j)]);
  return s.value();
}

double raw_objective(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  KahanSum f;
  for (int k = 1; k <= n; ++k) {
    const double x = q[static_cast<std::size_t>(k - 1)];
    const double y = q[static_cast<std::size_t>(k)];
    if (x > 0.0) f.add((x - y) * (x - y) / (2.0 * x));
  }
  const double s = survivors(q);
  f.add(s > 0.0 ? 0.5 / s : HUGE_VAL);
  return f.value();
}

// Decreasing isotonic regression (pool adjacent violators) onto
// 1 >= z_1 >= ... >= z_{n-1} >= floor, in place on q[1..n-1].
void project(std::vector<double>& q) {
  const std::size_t n = q.size() - 1;
  std::vector<double> val;
  std::vector<std::size_t> len;
  val.reserve(n);
  len.reserve(n);
  for (std::size_t j = 1; j < n; ++j) {
    double v = q[j];
    std::size_t l = 1;
    while (!val.empty() && val.back() < v) {
      v = (val.back() * static_cast<double>(len.back()) + v * static_cast<double>(l)) /
          static_cast<double>(len.back() + l);
      l += len.back();
      val.pop_back();
      len.pop_back();
    }
    val.push_back(v);
    len.push_back(l);
  }
  std::size_t j = 1;
  for (std::size_t b = 0; b < val.size(); ++b) {
    const double v = std::clamp(val[b], kFloor, 1.0);
    for (std::size_t i = 0; i < len[b]; ++i) q[j++] = v;
  }
  q[0] = 1.0;
  q[n] = 0.0;
}

struct Derivatives {
  std::vector<double> g, diag, off;  // off[i] couples variables i and i+1
  double c = 0.0;                    // rank-one weight on 11^T
};

// Variables are q_1..q_{n-1}, stored at index j-1.
Derivatives derivatives(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size()) - 1;
  const int v = n - 1;
  Derivatives d;
  d.g.assign(static_cast<std::size_t>(v), 0.0);
  d.diag.assign(static_cast<std::size_t>(v), 0.0);
  d.off.assign(static_cast<std::size_t>(std::max(v - 1, 0)), 0.0);
  const double s = survivors(q);
  const double gs = 0.5 / (s * s);
  d.c = 1.0 / (s * s * s);
  for (int j = 1; j < n; ++j) {
    const auto i = static_cast<std::size_t>(j - 1);
    const double prev = q[static_cast<std::size_t>(j - 1)];
    const double cur = q[static_cast<std::size_t>(j)];
    const double nxt = q[static_cast<std::size_t>(j + 1)];
    // term k = j, q_j in the second slot
    d.g[i] += -1.0 + cur / prev;
    d.diag[i] += 1.0 / prev;
    // term k = j + 1, q_j in the first slot
    const double r = nxt / cur;
    d.g[i] += 0.5 - 0.5 * r * r;
    d.diag[i] += r * r / cur;
    if (j + 1 < n) d.off[i] = -nxt / (cur * cur);
    d.g[i] += gs;
  }
  return d;
}

// Solves (T + c 11^T) x = r where T is symmetric tridiagonal.
std::vector<double> solve(const Derivatives& d, const std::vector<double>& r) {
  const std::size_t v = d.diag.size();
  auto thomas = [&](const std::vector<double>& rhs) {
    std::vector<double> cp(v), dp(v), x(v);
    double denom = d.diag[0];
    cp[0] = v > 1 ? d.off[0] / denom : 0.0;
    dp[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < v; ++i) {
      denom = d.diag[i] - d.off[i - 1] * cp[i - 1];
      cp[i] = i + 1 < v ? d.off[i] / denom : 0.0;
      dp[i] = (rhs[i] - d.off[i - 1] * dp[i - 1]) / denom;
    }
    x[v - 1] = dp[v - 1];
    for (std::size_t i = v - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
  };
  std::vector<double> x = thomas(r);
  const std::vector<double> w = thomas(std::vector<double>(v, 1.0));
  double sx = 0.0, sw = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    sx += x[i];
    sw += w[i];
  }
  const double scale = d.c * sx / (1.0 + d.c * sw);
  for (std::size_t i = 0; i < v; ++i) x[i] -= scale * w[i];
  return x;
}

void fill_result(Avg2Program& p) {
  const int n = p.n;
  const double s = survivors(p.q);
  p.a.assign(static_cast<std::size_t>(n), 0.0);
  KahanSum lhs;
  for (int k = 1; k <= n; ++k) {
    const double ak = (n - k) / s;
    p.a[static_cast<std::size_t>(k - 1)] = ak;
    lhs.add((p.q[static_cast<std::size_t>(k - 1)] - p.q[static_cast<std::size_t>(k)]) * ak);
  }
  p.residual = std::abs(lhs.value() - 1.0);
  p.objective = n * raw_objective(p.q);
}

}  // namespace

double avg2_objective(const std::vector<double>& q) {
  return static_cast<double>(q.size() - 1) * raw_objective(q);
}

Avg2Program optimize_avg2(int n, int iterations, double tolerance) {
  if (n < 10) throw std::invalid_argument("optimize_avg2 needs n >= 10");
  if (iterations < 1) throw std::invalid_argument("iterations must be positive");
  Avg2Program p;
  p.n = n;
  p.q.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = 1.0 - static_cast<double>(k) / n;
    p.q[static_cast<std::size_t>(k)] = t * t;
  }
  project(p.q);
  double f = raw_objective(p.q);
  std::vector<double> trial(p.q.size());

  for (p.iterations = 0; p.iterations < iterations; ++p.iterations) {
    const Derivatives d = derivatives(p.q);
    std::vector<double> step = solve(d, d.g);

    // Projected-gradient optimality measure in scaled units.
    double pg = 0.0;
    {
      trial = p.q;
      for (std::size_t i = 0; i < d.g.size(); ++i) trial[i + 1] -= d.g[i] / d.diag[i];
      project(trial);
      for (std::size_t i = 1; i + 1 < trial.size(); ++i) {
        pg = std::max(pg, std::abs(trial[i] - p.q[i]) * std::abs(d.g[i - 1]) * n);
      }
    }
    p.gradient_norm = pg;
    if (pg <= tolerance) {
      p.converged = true;
      break;
    }

    bool moved = false;
    for (int attempt = 0; attempt < 2 && !moved; ++attempt) {
      if (attempt == 1) {
        for (std::size_t i = 0; i < step.size(); ++i) step[i] = d.g[i] / d.diag[i];
      }
      double t = 1.0;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        trial = p.q;
        for (std::size_t i = 0; i < step.size(); ++i) trial[i + 1] -= t * step[i];
        project(trial);
        double decrease = 0.0;
        for (std::size_t i = 0; i < step.size(); ++i) decrease += d.g[i] * (trial[i + 1] - p.q[i + 1]);
        const double ft = raw_objective(trial);
        if (ft <= f + 1e-4 * decrease && ft <= f) {
          moved = ft < f || decrease < 0.0;
          p.q.swap(trial);
          f = ft;
          break;
        }
      }
    }
    if (!moved) break;  // no representable descent left
  }
  fill_result(p);
  return p;
}

}  // namespace onbuy
