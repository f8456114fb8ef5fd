#include "fluctlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "fluctlab/decomposition.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/parallel.hpp"
#include "fluctlab/stats.hpp"

namespace fluctlab {

namespace {
constexpr double z95 = 1.96;
}

std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials) {
  if (trials < 1 || hits < 0 || hits > trials)
    throw Error("out-of-range", "need 0 <= hits <= trials, trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z95 * z95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double hw = (z95 / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - hw), std::min(1.0, center + hw)};
}

TailEstimate make_tail_estimate(std::int64_t hits, std::int64_t trials) {
  TailEstimate e;
  e.hits = hits;
  e.trials = trials;
  e.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  std::tie(e.wilson_low, e.wilson_high) = wilson_interval(hits, trials);
  return e;
}

namespace {

void require_compact(const TrialPlan& plan) {
  if (!plan.spec.compact())
    throw Error("fiber-undefined", "this estimator needs a compact-support marginal");
}

// Hit counting over trial-indexed flags keeps aggregation order-free.
TailEstimate count_hits(const std::vector<std::uint8_t>& hit) {
  std::int64_t hits = 0;
  for (std::uint8_t h : hit) hits += h;
  return make_tail_estimate(hits, static_cast<std::int64_t>(hit.size()));
}

}  // namespace

TailEstimate estimate_fiber_tail(const TrialPlan& plan, double r) {
  require_compact(plan);
  if (plan.trials < 1) throw Error("out-of-range", "need at least one trial");
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(plan.trials), 0);
  for_each_trial(plan.trials, plan.workers, [&](std::int64_t t) {
    RngStream stream(plan.seed, static_cast<std::uint64_t>(t));
    const SampleVector x = sample(plan.spec, plan.n, stream);
    hit[static_cast<std::size_t>(t)] = fiber(x).length <= r ? 1 : 0;
  });
  return count_hits(hit);
}

TailEstimate estimate_modulus_tail(const TrialPlan& plan) {
  require_compact(plan);
  if (!(plan.delta > 0) || plan.delta > plan.s || plan.s > plan.spec.ell)
    throw Error("out-of-range", "need 0 < delta <= s <= ell");
  const double r = std::sqrt(static_cast<double>(plan.n)) * plan.delta;
  return estimate_fiber_tail(plan, r);
}

namespace {

double mu_from_rule(const FluctuationFrame& frame, const MarginalSpec& spec, MuRule rule,
                    double mu_const) {
  switch (rule) {
    case MuRule::constant:
      return mu_const;
    case MuRule::eta_median: {
      std::vector<double> etas = frame.etas;
      std::sort(etas.begin(), etas.end());
      const std::size_t n = etas.size();
      const double med =
          n % 2 == 1 ? etas[n / 2] : 0.5 * (etas[n / 2 - 1] + etas[n / 2]);
      return spec.a + 0.5 * spec.ell + med;
    }
    case MuRule::eta_max: {
      double m = frame.etas[0];
      for (double e : frame.etas) m = std::max(m, e);
      return spec.a + 0.5 * spec.ell + m;
    }
  }
  return mu_const;
}

}  // namespace

IntervalProbResult estimate_interval_probability(const TrialPlan& plan, MuRule rule,
                                                 double mu_const) {
  require_compact(plan);
  if (plan.trials < 1) throw Error("out-of-range", "need at least one trial");
  if (plan.s < 0) throw Error("out-of-range", "interval length must be nonnegative");

  struct Record {
    std::uint8_t hit = 0;
    double clamped_modulus = 0.0;
    double conditional_probability = 0.0;
  };
  std::vector<Record> rec(static_cast<std::size_t>(plan.trials));
  for_each_trial(plan.trials, plan.workers, [&](std::int64_t t) {
    RngStream stream(plan.seed, static_cast<std::uint64_t>(t));
    const SampleVector x = sample(plan.spec, plan.n, stream);
    const FluctuationFrame frame = decompose(x);
    const double mu = mu_from_rule(frame, plan.spec, rule, mu_const);
    Record& r = rec[static_cast<std::size_t>(t)];
    r.hit = (frame.xi >= mu && frame.xi <= mu + plan.s) ? 1 : 0;
    if (plan.s > 0) {
      r.clamped_modulus = modulus(fiber(x), plan.s);
      r.conditional_probability = conditional_interval_probability(x, mu, plan.s);
    }
  });

  IntervalProbResult out;
  std::int64_t hits = 0;
  double sum_nu = 0.0, sum_cp = 0.0;
  for (const Record& r : rec) {  // sequential fold, worker-count independent
    hits += r.hit;
    sum_nu += r.clamped_modulus;
    sum_cp += r.conditional_probability;
  }
  out.estimate = make_tail_estimate(hits, plan.trials);
  out.mean_clamped_modulus = sum_nu / static_cast<double>(plan.trials);
  out.mean_conditional_probability = sum_cp / static_cast<double>(plan.trials);
  return out;
}

IndependenceReport gaussian_independence_check(long n, std::int64_t trials, std::uint64_t seed,
                                               int workers) {
  if (n < 2) throw Error("invalid-sample-size", "independence check needs n >= 2");
  if (trials < 100) throw Error("out-of-range", "too few trials for the diagnostics");

  const auto un = static_cast<std::size_t>(n);
  std::vector<double> xi(static_cast<std::size_t>(trials));
  std::vector<double> eta_norm(static_cast<std::size_t>(trials));
  std::vector<std::vector<double>> etas(un,
                                        std::vector<double>(static_cast<std::size_t>(trials)));
  MarginalSpec spec = MarginalSpec::gaussian();

  for_each_trial(trials, workers, [&](std::int64_t t) {
    RngStream stream(seed, static_cast<std::uint64_t>(t));
    const SampleVector x = sample(spec, n, stream);
    const FluctuationFrame frame = decompose(x);
    const auto ut = static_cast<std::size_t>(t);
    xi[ut] = frame.xi;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      etas[i][ut] = frame.etas[i];
      norm2 += frame.etas[i] * frame.etas[i];
    }
    eta_norm[ut] = std::sqrt(norm2);
  });

  IndependenceReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.correlation_threshold = 3.0 / std::sqrt(static_cast<double>(trials));
  rep.correlations.resize(un);
  for (std::size_t i = 0; i < un; ++i) {
    rep.correlations[i] = pearson_correlation(xi, etas[i]);
    rep.max_abs_correlation = std::max(rep.max_abs_correlation, std::abs(rep.correlations[i]));
  }
  rep.correlations_ok = rep.max_abs_correlation <= rep.correlation_threshold;

  // conditional-vs-unconditional law of xi: split trials at the median of
  // |eta| and compare the lower half's xi against the pooled quantile bins
  std::vector<std::size_t> order(xi.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return eta_norm[a] < eta_norm[b]; });
  const std::size_t half = order.size() / 2;

  std::vector<double> xi_sorted = xi;
  std::sort(xi_sorted.begin(), xi_sorted.end());
  const int bins = rep.bins;
  std::vector<double> edges(static_cast<std::size_t>(bins - 1));
  for (int b = 1; b < bins; ++b)
    edges[static_cast<std::size_t>(b - 1)] =
        xi_sorted[xi_sorted.size() * static_cast<std::size_t>(b) / static_cast<std::size_t>(bins)];

  std::vector<std::int64_t> observed(static_cast<std::size_t>(bins), 0);
  for (std::size_t k = 0; k < half; ++k) {
    const double v = xi[order[k]];
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    ++observed[static_cast<std::size_t>(it - edges.begin())];
  }
  const double expected = static_cast<double>(half) / static_cast<double>(bins);
  double chi2 = 0.0;
  for (std::int64_t obs : observed) {
    const double d = static_cast<double>(obs) - expected;
    chi2 += d * d / expected;
  }
  rep.chi_square = chi2;
  rep.p_value = chi_square_pvalue(chi2, bins - 1);
  rep.chi_square_ok = rep.p_value > 0.001;
  return rep;
}

}  // namespace fluctlab
