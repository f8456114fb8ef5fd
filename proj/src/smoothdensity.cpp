#include "fluctlab/smoothdensity.hpp"

#include <algorithm>
#include <cmath>

#include "fluctlab/errors.hpp"
#include "fluctlab/parallel.hpp"

namespace fluctlab {

long default_grid_points(double fiber_range, long n, double s) {
  const double window = std::sqrt(static_cast<double>(n)) * s;
  if (!(window > 0) || !(fiber_range > 0)) return 33;
  const double spacing = window / 32.0;
  const double m = std::ceil(fiber_range / spacing) + 1.0;
  return std::clamp(static_cast<long>(m), 33L, 200001L);
}

FiberDensityProfile fiber_density(const FluctuationFrame& frame, const MarginalSpec& spec,
                                  long grid_points) {
  if (!spec.compact())
    throw Error("fiber-undefined", "fiber density requires a compact-support marginal");
  const long n = static_cast<long>(frame.etas.size());
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  double eta_min = frame.etas[0], eta_max = frame.etas[0];
  for (double e : frame.etas) {
    eta_min = std::min(eta_min, e);
    eta_max = std::max(eta_max, e);
  }
  const double t_lo = sqrt_n * (spec.a - eta_min);
  const double t_hi = sqrt_n * (spec.a + spec.ell - eta_max);
  if (!(t_hi > t_lo))
    throw Error("point-mass-fiber", "degenerate fiber carries a point mass, no density");
  if (grid_points < 2) grid_points = 2;

  FiberDensityProfile p;
  p.n = n;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.step = (t_hi - t_lo) / static_cast<double>(grid_points - 1);
  p.grid.resize(static_cast<std::size_t>(grid_points));
  p.weights.resize(static_cast<std::size_t>(grid_points));
  p.cum.resize(static_cast<std::size_t>(grid_points));

  for (long m = 0; m < grid_points; ++m) {
    const double t = (m + 1 == grid_points) ? t_hi : t_lo + p.step * static_cast<double>(m);
    p.grid[static_cast<std::size_t>(m)] = t;
    double w = 1.0;
    for (double e : frame.etas) {
      // endpoints can fall a rounding error outside the support; clamp
      const double v = std::clamp(e + t / sqrt_n, spec.a, spec.a + spec.ell);
      w *= density_at(spec, v);
    }
    p.weights[static_cast<std::size_t>(m)] = w;
  }

  p.cum[0] = 0.0;
  for (std::size_t m = 1; m < p.weights.size(); ++m) {
    const double h = p.grid[m] - p.grid[m - 1];
    p.cum[m] = p.cum[m - 1] + 0.5 * (p.weights[m] + p.weights[m - 1]) * h;
  }
  p.z = p.cum.back();
  if (!(p.z > 0)) throw Error("point-mass-fiber", "fiber density normalizer vanished");
  return p;
}

namespace {

// Integral of the piecewise-linear interpolant of the weights from t_lo to x.
double cumulative_at(const FiberDensityProfile& p, double x) {
  if (x <= p.t_lo) return 0.0;
  if (x >= p.t_hi) return p.z;
  const auto last = static_cast<long>(p.grid.size()) - 1;
  long i = static_cast<long>((x - p.t_lo) / p.step);
  i = std::clamp(i, 0L, last - 1);
  while (i > 0 && x < p.grid[static_cast<std::size_t>(i)]) --i;
  while (i < last - 1 && x > p.grid[static_cast<std::size_t>(i + 1)]) ++i;
  const auto ui = static_cast<std::size_t>(i);
  const double h = p.grid[ui + 1] - p.grid[ui];
  const double dx = x - p.grid[ui];
  const double slope = (p.weights[ui + 1] - p.weights[ui]) / h;
  return p.cum[ui] + p.weights[ui] * dx + 0.5 * slope * dx * dx;
}

}  // namespace

double interval_mass(const FiberDensityProfile& profile, double w_lo, double w_hi) {
  if (!(w_hi > w_lo)) return 0.0;
  const double mass = (cumulative_at(profile, w_hi) - cumulative_at(profile, w_lo)) / profile.z;
  return std::clamp(mass, 0.0, 1.0);
}

double modulus_smooth(const FiberDensityProfile& profile, double s) {
  if (!(s > 0)) throw Error("out-of-range", "modulus requires s > 0");
  const double window = std::sqrt(static_cast<double>(profile.n)) * s;
  if (window >= profile.range()) return 1.0;

  double best = 0.0;
  const double u_max = profile.t_hi - window;
  for (std::size_t m = 0; m < profile.grid.size() && profile.grid[m] <= u_max; ++m) {
    const double u = profile.grid[m];
    const double mass = cumulative_at(profile, u + window) - cumulative_at(profile, u);
    best = std::max(best, mass);
  }
  // include the rightmost admissible window, which is generally off-grid
  best = std::max(best, cumulative_at(profile, profile.t_hi) - cumulative_at(profile, u_max));
  return std::clamp(best / profile.z, 0.0, 1.0);
}

SmoothTailResult thm_densities_experiment(const MarginalSpec& spec, long n, double s,
                                          double alpha, std::int64_t trials, std::uint64_t seed,
                                          int workers) {
  if (!spec.compact())
    throw Error("fiber-undefined", "the smooth tail experiment needs compact support");
  if (!(s > 0) || !(alpha > 0) || !(alpha < 1))
    throw Error("out-of-range", "need s > 0 and alpha in (0,1)");
  const SmoothDensityConstants consts = smooth_constants(spec);
  const double delta = std::pow(s, alpha);
  const double hypothesis_limit = consts.c_star * std::pow(static_cast<double>(n), -1.5);
  if (delta > hypothesis_limit)
    throw Error("delta-too-large", "delta = s^alpha exceeds c_star * N^{-3/2}");

  const double threshold = std::pow(s, 1.0 - alpha);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  // nu <= (rho_bar/rho_star) * sqrt(N) s / |X(Y)|, so fibers longer than
  // ratio * sqrt(N) * delta can never reach the threshold
  const double ratio = consts.rho_bar / consts.rho_star;
  const double skip_length = ratio * sqrt_n * delta * (1.0 + 1e-9);

  struct Record {
    std::uint8_t hit = 0;
    std::uint8_t profiled = 0;
    std::uint8_t counterexample = 0;
  };
  std::vector<Record> rec(static_cast<std::size_t>(trials));
  for_each_trial(trials, workers, [&](std::int64_t t) {
    RngStream stream(seed, static_cast<std::uint64_t>(t));
    const SampleVector x = sample(spec, n, stream);
    const Fiber f = fiber(x);
    Record& r = rec[static_cast<std::size_t>(t)];
    if (f.length > skip_length) return;  // certified miss
    double nu;
    if (f.length == 0.0) {
      nu = 1.0;
    } else {
      const FluctuationFrame frame = decompose(x);
      const FiberDensityProfile p =
          fiber_density(frame, spec, default_grid_points(f.length, n, s));
      nu = modulus_smooth(p, s);
      r.profiled = 1;
    }
    r.hit = nu >= threshold ? 1 : 0;
    if (r.hit && f.length > 4.0 * sqrt_n * delta) r.counterexample = 1;
  });

  SmoothTailResult out;
  std::int64_t hits = 0;
  for (const Record& r : rec) {
    hits += r.hit;
    out.profiles_built += r.profiled;
    out.inclusion_counterexamples += r.counterexample;
  }
  out.estimate = make_tail_estimate(hits, trials);
  const double nd = static_cast<double>(n) * delta;
  out.bound = 4.0 * consts.rho_bar * consts.rho_bar * nd * nd;
  out.delta = delta;
  out.threshold = threshold;
  out.c_star = consts.c_star;
  return out;
}

DensityRatioReport density_ratio_check(const FiberDensityProfile& profile,
                                       const SmoothDensityConstants& consts) {
  DensityRatioReport rep;
  const double sqrt_n = std::sqrt(static_cast<double>(profile.n));
  rep.log_derivative_bound = 1.05 * consts.c1 * sqrt_n;

  // flat density: the window is the whole fiber and every check is exact
  double ell_n = consts.c1 == 0.0 ? 0.5 * profile.range()
                                  : consts.ell_star / static_cast<double>(profile.n);
  if (profile.n < 4 || profile.range() < 2.0 * ell_n) return rep;
  rep.precondition_met = true;

  std::size_t argmax = 0;
  for (std::size_t m = 1; m < profile.weights.size(); ++m)
    if (profile.weights[m] > profile.weights[argmax]) argmax = m;
  const double t_star = profile.grid[argmax];

  double w_min = profile.weights[argmax], w_max = profile.weights[argmax];
  for (std::size_t m = 0; m < profile.grid.size(); ++m) {
    if (std::abs(profile.grid[m] - t_star) <= ell_n) {
      w_min = std::min(w_min, profile.weights[m]);
      w_max = std::max(w_max, profile.weights[m]);
    }
  }
  rep.window_ratio = w_max / w_min;
  rep.ratio_ok = rep.window_ratio >= 0.25 && rep.window_ratio <= 4.0;

  double max_ld = 0.0;
  for (std::size_t m = 1; m < profile.weights.size(); ++m) {
    const double h = profile.grid[m] - profile.grid[m - 1];
    const double ld = std::abs(std::log(profile.weights[m]) - std::log(profile.weights[m - 1])) / h;
    max_ld = std::max(max_ld, ld);
  }
  rep.max_log_derivative = max_ld;
  rep.log_derivative_ok = max_ld <= rep.log_derivative_bound || consts.c1 == 0.0;
  return rep;
}

}  // namespace fluctlab
