#pragma once

#include <vector>

namespace onbuy {

// Finite-horizon average-two-purchase program. q[k] is the probability
// that the first k items are all rejected (q[0] = 1, q[n] = 0); a[k-1] is
// the expected number of later purchases given the first one is item k.
struct Avg2Program {
  int n = 0;
  std::vector<double> q;
  std::vector<double> a;
  double objective = 0.0;  // scaled by n
  double residual = 0.0;   // |sum (q_{k-1} - q_k) a_k - 1|
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Objective for a fixed q with the optimal a substituted, scaled by n.
double avg2_objective(const std::vector<double>& q);

Avg2Program optimize_avg2(int n, int iterations = 200, double tolerance = 1e-10);

}  // namespace onbuy
