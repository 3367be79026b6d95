#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

// Brute-force reference for two DMUs, one deterministic input, one output
// with variance c^2 on each DMU (independent), stochastic diagonal
// direction (dm, dp), evaluated DMU o in {0, 1}:
//   max beta  s.t.  x_o (1 - beta dm) - x.lambda >= 0,
//                   y.lambda - y_o (1 + beta dp) >= q c ||lambda - (1 + beta dp) e_o||.
struct TwoDmuInstance {
  double x[2];
  double y[2];
  double c = 0.0;
  double dm = 0.0;
  double dp = 1.0;
  int o = 1;
  double q = 1.6448536269514722;  // |probit(0.05)|
};

namespace oracle {

inline double ternary_max(double lo, double hi, const std::function<double(double)>& f) {
  for (int it = 0; it < 90; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (f(a) < f(b))
      lo = a;
    else
      hi = b;
  }
  return f(0.5 * (lo + hi));
}

// Largest output margin over feasible lambda at this beta (concave, so
// nested ternary search finds it); -inf when the input row is empty.
inline double best_margin(const TwoDmuInstance& p, double beta) {
  const double kappa_in = 1.0 - beta * p.dm;
  const double kappa = 1.0 + beta * p.dp;
  const double budget = p.x[p.o] * kappa_in;
  if (budget < 0) return -INFINITY;
  auto margin = [&](double l0, double l1) {
    const double v0 = l0 - (p.o == 0 ? kappa : 0.0);
    const double v1 = l1 - (p.o == 1 ? kappa : 0.0);
    return p.y[0] * l0 + p.y[1] * l1 - p.y[p.o] * kappa - p.q * p.c * std::hypot(v0, v1);
  };
  return ternary_max(0.0, budget / p.x[1], [&](double l1) {
    const double room = std::max(0.0, (budget - p.x[1] * l1) / p.x[0]);
    return ternary_max(0.0, room, [&](double l0) { return margin(l0, l1); });
  });
}

// beta* to grid resolution `step`: feasibility is monotone in beta (the
// feasible set is convex and contains beta = 0), so bisect over grid points.
inline double beta_star(const TwoDmuInstance& p, double step = 1e-4) {
  auto feasible = [&](long k) { return best_margin(p, k * step) >= -1e-12; };
  long lo = 0, hi = 1;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo * step;
}

}  // namespace oracle
