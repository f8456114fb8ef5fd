#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fluctlab/distributions.hpp"

namespace fluctlab {

// Tail frequency with its 95% Wilson score interval.
struct TailEstimate {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;

  double half_width() const { return 0.5 * (wilson_high - wilson_low); }
};

enum class TrialTarget { fiber_tail, modulus_tail, interval_prob, trace_event, rcm_sweep };

struct TrialPlan {
  MarginalSpec spec;
  long n = 2;
  std::int64_t trials = 1;
  double s = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  TrialTarget target = TrialTarget::fiber_tail;
  int workers = 1;
};

// 95% Wilson score interval at z = 1.96.
std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials);
TailEstimate make_tail_estimate(std::int64_t hits, std::int64_t trials);

// Frequency of {fiber length <= r}.
TailEstimate estimate_fiber_tail(const TrialPlan& plan, double r);

// Frequency of {nu_N(s) >= s/delta}, evaluated through the exact event
// identity {sqrt(N) s / |X(Y)| >= s/delta} = {|X(Y)| <= sqrt(N) delta}, so
// the same stream gives bit-identical hit sets with estimate_fiber_tail at
// r = sqrt(N)*delta.  Requires 0 < delta <= s <= ell.
TailEstimate estimate_modulus_tail(const TrialPlan& plan);

// Rule for the fluctuation-measurable interval anchor mu~.
enum class MuRule { constant, eta_median, eta_max };

struct IntervalProbResult {
  TailEstimate estimate;
  // averages of the per-trial exact conditional quantities, for domination
  // and total-probability cross-checks
  double mean_clamped_modulus = 0.0;       // E[min(1, nu_N(s))]
  double mean_conditional_probability = 0.0;
};

// Frequency of {xi_N in [mu~, mu~ + s]} with mu~ given by the rule
// (constant uses mu_const; the eta rules shift the fluctuation statistic to
// the middle of the support).
IntervalProbResult estimate_interval_probability(const TrialPlan& plan, MuRule rule,
                                                 double mu_const = 0.0);

// Correlation and conditional-law diagnostics for the gaussian sample-mean /
// fluctuation independence.
struct IndependenceReport {
  long n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> correlations;  // corr(xi, eta_i)
  double max_abs_correlation = 0.0;
  double correlation_threshold = 0.0;  // 3/sqrt(T)
  double chi_square = 0.0;
  int bins = 20;
  double p_value = 1.0;
  bool correlations_ok = false;
  bool chi_square_ok = false;  // p > 0.001
};

IndependenceReport gaussian_independence_check(long n, std::int64_t trials, std::uint64_t seed,
                                               int workers = 1);

}  // namespace fluctlab
