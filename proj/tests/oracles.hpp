// Closed-form reference laws used only by the tests.  Everything here is
// independent of the library's estimation path: order statistics and the
// Irwin-Hall distribution come straight from their textbook formulas.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// CDF of the sum of n independent Unif[0,1] variables.
inline double irwin_hall_cdf(int n, double x) {
  if (x <= 0) return 0.0;
  if (x >= n) return 1.0;
  double sum = 0.0;
  double binom = 1.0;  // C(n, k)
  for (int k = 0; k <= static_cast<int>(x); ++k) {
    const double term = binom * std::pow(x - k, n);
    sum += (k % 2 == 0 ? term : -term);
    binom = binom * (n - k) / (k + 1);
  }
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  return sum / fact;
}

// P{ mean of n Unif[0,1] in [lo, hi] }.
inline double bates_interval(int n, double lo, double hi) {
  return irwin_hall_cdf(n, n * hi) - irwin_hall_cdf(n, n * lo);
}

// P{ range of n Unif[0,1] <= w }.
inline double uniform_range_cdf(int n, double w) {
  if (w <= 0) return 0.0;
  if (w >= 1) return 1.0;
  return n * std::pow(w, n - 1) - (n - 1) * std::pow(w, n);
}

// P{ fiber length <= sqrt(n) * delta } for Unif[0, ell]:
// the event is {ell - range <= delta}.
inline double fiber_tail_exact(int n, double delta, double ell = 1.0) {
  if (delta <= 0) return 0.0;
  if (delta >= ell) return 1.0;
  return 1.0 - uniform_range_cdf(n, (ell - delta) / ell);
}

// N = 2, ell = 1 special case: P{ |X(Y)| <= r } = r^2 / 2.
inline double n2_fiber_tail_exact(double r) {
  const double t = r / std::sqrt(2.0);
  if (t >= 1.0) return 1.0;
  return t * t;
}

// Dirichlet chain eigenvalues 2 - 2 cos(k pi / (L+1)), k = 1..L, ascending.
inline double chain_eigenvalue(int side, int k) {
  return 2.0 - 2.0 * std::cos(k * M_PI / (side + 1));
}

}  // namespace oracles
