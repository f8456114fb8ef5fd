#pragma once

#include <vector>

#include "fluctlab/distributions.hpp"

namespace fluctlab {

// Mean/fluctuation split of a sample: xi is the sample mean,
// eta_i = X_i - xi, xi_tilde = sqrt(N)*xi, and ys holds the translation
// invariants Y_i = eta_i - eta_N = X_i - X_N that generate the conditioning
// sigma-algebra.
struct FluctuationFrame {
  double xi = 0.0;
  double xi_tilde = 0.0;
  std::vector<double> etas;  // N entries, sums to zero
  std::vector<double> ys;    // N-1 entries
};

// Segment cut out of the support cube by the line X + t*(1,...,1)/sqrt(N);
// the conditional law of the sample mean lives on it.  Extremes are stored
// relative to the support's left endpoint, so 0 <= ymin <= ymax <= ell.
struct Fiber {
  double ymin = 0.0;
  double ymax = 0.0;
  double ell = 0.0;
  long n = 0;
  double length = 0.0;  // sqrt(N) * (ell - (ymax - ymin)), in [0, sqrt(N)*ell]
};

FluctuationFrame decompose(const SampleVector& x);

// Compact-support marginals only; gaussian input raises "fiber-undefined".
Fiber fiber(const SampleVector& x);

// Conditional continuity modulus nu_N(s) on this fiber: the largest
// conditional probability of any mean-interval of length s.  Clamped to
// [0,1]; a degenerate fiber carries a point mass, so the value is 1.
double modulus(const Fiber& f, double s);

// Exact P{ xi_N in [t, t+s] | fluctuations } on the fiber through x.
// Uniform marginals use the closed-form segment overlap; the smooth family
// integrates the fiber density.
double conditional_interval_probability(const SampleVector& x, double t, double s);

}  // namespace fluctlab
