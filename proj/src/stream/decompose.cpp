#include "onbuy/decompose.hpp"

#include <cmath>

namespace onbuy {

double latent_survival(double x, int m) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return std::exp(std::log1p(-x) / m);
}

double latent_sample(Rng& rng, int m) {
  // Inverse of the survival function: 1 - U^m.
  return -std::expm1(m * std::log1p(-rng.uniform()));
}

void decompose_min_of_m(double cost, int m, Rng& rng, double* out) {
  out[0] = cost;
  const double room = 1.0 - cost;
  for (int j = 1; j < m; ++j) {
    // Pr(Z >= x | Z >= cost) = ((1 - x) / (1 - cost))^(1/m).
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double z = 1.0 - room * std::pow(u, m);
    out[j] = z < cost ? cost : z;
  }
}

std::vector<double> decompose_min_of_m(double cost, int m, Rng& rng) {
  std::vector<double> out(static_cast<std::size_t>(m));
  decompose_min_of_m(cost, m, rng, out.data());
  return out;
}

}  // namespace onbuy
