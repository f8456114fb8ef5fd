#include "fluctlab/bounds.hpp"

#include <cmath>

#include "fluctlab/errors.hpp"

namespace fluctlab {

namespace {
const double sqrt_2pi = std::sqrt(2.0 * M_PI);
}

double gaussian_interval_bound(long n, double len) {
  if (n < 1) throw Error("out-of-range", "n must be >= 1");
  if (len < 0) throw Error("out-of-range", "interval length must be nonnegative");
  return std::sqrt(static_cast<double>(n)) * len / sqrt_2pi;
}

double gaussian_trace_bound(long cube_size, double len) {
  if (cube_size < 1) throw Error("out-of-range", "cube size must be >= 1");
  if (len < 0) throw Error("out-of-range", "interval length must be nonnegative");
  return std::pow(static_cast<double>(cube_size), 1.5) * len / sqrt_2pi;
}

double lemma_prob_x_bound(long n, double delta, double ell) {
  if (!(delta > 0) || delta > ell) throw Error("out-of-range", "need 0 < delta <= ell");
  return static_cast<double>(n) * delta / ell;
}

double lemma_densities_bound(long n, double r, double rho_bar) {
  if (r < 0) throw Error("out-of-range", "r must be nonnegative");
  if (!(rho_bar > 0)) throw Error("out-of-range", "rho_bar must be positive");
  return 0.25 * rho_bar * rho_bar * r * r * static_cast<double>(n);
}

double thm_prob_nu_bound(long n, double delta, double ell) {
  if (!(delta > 0) || delta > ell) throw Error("out-of-range", "need 0 < delta <= ell");
  return static_cast<double>(n) * delta / ell;
}

double thm_prob_nu_jl_bound(long n, double delta, double ell) {
  if (delta < 0 || delta > ell) throw Error("out-of-range", "need 0 <= delta <= ell");
  const double nd = static_cast<double>(n) * delta;
  return nd * nd / (4.0 * ell * ell);
}

double thm_densities_bound(long n, double delta, const SmoothDensityConstants& consts) {
  if (!(delta > 0)) throw Error("out-of-range", "delta must be positive");
  const double limit = consts.c_star * std::pow(static_cast<double>(n), -1.5);
  if (delta > limit)
    throw Error("delta-too-large", "delta exceeds c_star * N^{-3/2}, hypothesis fails");
  const double nd = static_cast<double>(n) * delta;
  return 4.0 * consts.rho_bar * consts.rho_bar * nd * nd;
}

double trace_bound_from_modulus(long cube_size, double nu) {
  if (nu < 0 || nu > 1) throw Error("out-of-range", "nu must lie in [0,1]");
  return static_cast<double>(cube_size) * nu;
}

RcmParameters rcm_uniform_params(double ell, double alpha) {
  if (!(ell > 0)) throw Error("out-of-range", "ell must be positive");
  if (!(alpha > 0) || !(alpha < 1)) throw Error("invalid-exponent", "alpha must lie in (0,1)");
  RcmParameters p;
  p.c_prime = 1.0;
  p.a_prime = 0.0;
  p.b_prime = 1.0 - alpha;
  p.c_double = 1.0 / (4.0 * ell * ell);
  p.a_double = 2.0;
  p.b_double = 2.0 * alpha;
  return p;
}

double rcm_threshold(const RcmParameters& p, long q_size, double s) {
  return p.c_prime * std::pow(static_cast<double>(q_size), p.a_prime) * std::pow(s, p.b_prime);
}

double rcm_tail_bound(const RcmParameters& p, long q_size, double s) {
  return p.c_double * std::pow(static_cast<double>(q_size), p.a_double) * std::pow(s, p.b_double);
}

Verdict rcm_check(const RcmParameters& p, long q_size, double s, double empirical_tail) {
  if (empirical_tail < 0 || empirical_tail > 1)
    throw Error("out-of-range", "empirical tail must lie in [0,1]");
  const double bound = rcm_tail_bound(p, q_size, s);
  if (bound >= 1.0) return Verdict::holds_vacuously;
  return empirical_tail <= bound ? Verdict::holds : Verdict::violated;
}

}  // namespace fluctlab
