#pragma once

#include <vector>

#include "onbuy/rng.hpp"

namespace onbuy {

// Latent law of one component: Pr(Z >= x) = (1 - x)^(1/m). The minimum of
// m independent copies is uniform on [0, 1].
double latent_survival(double x, int m);
double latent_sample(Rng& rng, int m);

// Splits an observed uniform cost into m latent values whose minimum is the
// cost. Z_1 = cost; the rest are drawn from the latent law conditioned on
// being at least the cost.
std::vector<double> decompose_min_of_m(double cost, int m, Rng& rng);
void decompose_min_of_m(double cost, int m, Rng& rng, double* out);

}  // namespace onbuy
