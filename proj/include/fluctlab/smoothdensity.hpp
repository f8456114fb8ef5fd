#pragma once

#include <cstdint>
#include <vector>

#include "fluctlab/decomposition.hpp"
#include "fluctlab/distributions.hpp"
#include "fluctlab/montecarlo.hpp"

namespace fluctlab {

// Unnormalized conditional density of xi_tilde along a fiber, tabulated on an
// equally spaced grid spanning the fiber's parameter range.  weights[m] is
// the product of the marginal densities at the fiber point with parameter
// grid[m]; cum is its running trapezoid integral and z = cum.back() the
// normalizer.
struct FiberDensityProfile {
  long n = 0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double step = 0.0;
  std::vector<double> grid;
  std::vector<double> weights;
  std::vector<double> cum;
  double z = 0.0;

  double range() const { return t_hi - t_lo; }
};

// Grid size that resolves a sliding window of xi_tilde-width sqrt(n)*s by at
// least 32 nodes, capped at 200001 nodes.
long default_grid_points(double fiber_range, long n, double s);

FiberDensityProfile fiber_density(const FluctuationFrame& frame, const MarginalSpec& spec,
                                  long grid_points);

// Integral of the normalized profile over [w_lo, w_hi] (xi_tilde units),
// exact for the piecewise-linear interpolant of the tabulated weights.
double interval_mass(const FiberDensityProfile& profile, double w_lo, double w_hi);

// Continuity modulus for a smooth marginal: the supremum over window
// positions of the normalized density mass in a window of xi_tilde-width
// sqrt(n)*s, computed by a sliding window with step equal to the grid
// spacing.  Returns 1 when the window covers the whole fiber.
double modulus_smooth(const FiberDensityProfile& profile, double s);

// Two-sided flatness of the fiber density near its maximum plus the discrete
// log-derivative bound.  Requires n >= 4 and a fiber of length at least
// 2*ell_star/n; shorter fibers set precondition_met = false (the theorem
// routes them through the tail bound instead).
struct DensityRatioReport {
  bool precondition_met = false;
  double window_ratio = 1.0;        // max/min weight over the window around the argmax
  double max_log_derivative = 0.0;  // max |d log p / dt| on the grid
  double log_derivative_bound = 0.0;
  bool ratio_ok = false;
  bool log_derivative_ok = false;
  bool passed() const { return precondition_met && ratio_ok && log_derivative_ok; }
};

DensityRatioReport density_ratio_check(const FiberDensityProfile& profile,
                                       const SmoothDensityConstants& consts);

// Tail verification for smooth marginals: per trial computes nu_N(s) through
// the fiber density and tests nu >= s^{1-alpha}, against the closed-form
// bound 4 rho_bar^2 N^2 delta^2 with delta = s^alpha.  Requires
// delta <= c_star * N^{-3/2}.  Trials whose fiber is long enough that even
// the extreme density ratio cannot reach the threshold are counted as misses
// without building the profile.
struct SmoothTailResult {
  TailEstimate estimate;
  double bound = 0.0;
  double delta = 0.0;
  double threshold = 0.0;          // s^{1-alpha}
  double c_star = 0.0;
  std::int64_t profiles_built = 0;
  // trials with nu >= threshold but fiber length > 4 sqrt(N) delta; the
  // two-sided flatness argument says there are none
  std::int64_t inclusion_counterexamples = 0;
};

SmoothTailResult thm_densities_experiment(const MarginalSpec& spec, long n, double s,
                                          double alpha, std::int64_t trials, std::uint64_t seed,
                                          int workers = 1);

}  // namespace fluctlab
