#include "fluctlab/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "fluctlab/errors.hpp"
#include "fluctlab/smoothdensity.hpp"

namespace fluctlab {

FluctuationFrame decompose(const SampleVector& x) {
  if (x.n < 2) throw Error("invalid-sample-size", "decomposition needs n >= 2");
  FluctuationFrame f;
  double sum = 0.0;
  for (double v : x.values) sum += v;
  const auto n = static_cast<double>(x.n);
  f.xi = sum / n;
  f.xi_tilde = std::sqrt(n) * f.xi;
  f.etas.resize(x.values.size());
  for (std::size_t i = 0; i < x.values.size(); ++i) f.etas[i] = x.values[i] - f.xi;
  f.ys.resize(x.values.size() - 1);
  const double last = x.values.back();
  for (std::size_t i = 0; i + 1 < x.values.size(); ++i) f.ys[i] = x.values[i] - last;
  return f;
}

Fiber fiber(const SampleVector& x) {
  if (!x.spec.compact())
    throw Error("fiber-undefined", "fibers require a compact-support marginal");
  if (x.n < 2) throw Error("invalid-sample-size", "fiber needs n >= 2");
  const auto [lo, hi] = std::minmax_element(x.values.begin(), x.values.end());
  Fiber f;
  f.ell = x.spec.ell;
  f.n = x.n;
  // extremes relative to the support's left endpoint
  f.ymin = *lo - x.spec.a;
  f.ymax = *hi - x.spec.a;
  const double sqrt_n = std::sqrt(static_cast<double>(x.n));
  f.length = sqrt_n * (f.ell - (f.ymax - f.ymin));
  f.length = std::clamp(f.length, 0.0, sqrt_n * f.ell);
  return f;
}

double modulus(const Fiber& f, double s) {
  if (!(s > 0)) throw Error("out-of-range", "modulus requires s > 0");
  if (f.length == 0.0) return 1.0;
  const double v = std::sqrt(static_cast<double>(f.n)) * s / f.length;
  return std::min(1.0, v);
}

double conditional_interval_probability(const SampleVector& x, double t, double s) {
  if (!x.spec.compact())
    throw Error("fiber-undefined", "conditional law on a fiber requires compact support");
  if (!(s > 0)) throw Error("out-of-range", "interval length must be positive");
  const FluctuationFrame frame = decompose(x);
  const Fiber f = fiber(x);
  const double sqrt_n = std::sqrt(static_cast<double>(x.n));

  if (f.length == 0.0)  // point mass at the sample mean
    return (frame.xi >= t && frame.xi <= t + s) ? 1.0 : 0.0;

  // xi_tilde-range of the fiber and the requested window on the same axis
  const double lo = sqrt_n * (frame.xi - f.ymin);
  const double hi = lo + f.length;
  const double w_lo = sqrt_n * t;
  const double w_hi = sqrt_n * (t + s);

  if (x.spec.kind == MarginalKind::uniform) {
    const double overlap = std::min(hi, w_hi) - std::max(lo, w_lo);
    if (overlap <= 0.0) return 0.0;
    return std::min(1.0, overlap / f.length);
  }

  // smooth marginal: integrate the fiber density over the window
  const FiberDensityProfile profile =
      fiber_density(frame, x.spec, default_grid_points(f.length, x.n, s));
  return interval_mass(profile, w_lo, w_hi);
}

}  // namespace fluctlab
