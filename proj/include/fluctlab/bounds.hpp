#pragma once

#include "fluctlab/distributions.hpp"

namespace fluctlab {

enum class Verdict { holds, holds_vacuously, violated, inconclusive };

// Parameters of the tail hypothesis
//   P{ nu_{|Q|}(s) >= C' |Q|^{A'} s^{B'} } <= C'' |Q|^{A''} s^{B''}.
struct RcmParameters {
  double c_prime = 1.0;
  double a_prime = 0.0;
  double b_prime = 0.0;
  double c_double = 1.0;
  double a_double = 0.0;
  double b_double = 0.0;
};

// P{xi_N in I} <= sqrt(N)|I|/sqrt(2*pi) for standard gaussian marginals.
double gaussian_interval_bound(long n, double len);

// P{tr P_I(H) >= 1} <= |cube|^{3/2}|I|/sqrt(2*pi), gaussian potential.
double gaussian_trace_bound(long cube_size, double len);

// P{|X(Y)| <= delta} <= N*delta/ell; requires 0 < delta <= ell.
double lemma_prob_x_bound(long n, double delta, double ell);

// P{|X(Y)| <= r} <= (1/4) rho_bar^2 r^2 N.  Exact (and attained) at N = 2
// for the uniform marginal; the Monte Carlo engine shows it fails for
// N >= 3 at small r, and reports are emitted unclamped either way.
double lemma_densities_bound(long n, double r, double rho_bar);

// P{nu_N(s) >= s/delta} <= N*delta/ell; requires 0 < delta <= ell.
double thm_prob_nu_bound(long n, double delta, double ell);

// P{nu_N(s) >= s/delta} <= N^2 delta^2 / (4 ell^2).
double thm_prob_nu_jl_bound(long n, double delta, double ell);

// Smooth-density tail bound 4 rho_bar^2 N^2 delta^2, valid for
// delta <= c_star * N^{-3/2}; larger delta raises "delta-too-large".
double thm_densities_bound(long n, double delta, const SmoothDensityConstants& consts);

// P{tr P_I(H) >= 1} <= |cube| * nu, per-realization modulus form.
double trace_bound_from_modulus(long cube_size, double nu);

// Uniform-marginal parameter set: C'=1, A'=0, B'=1-alpha,
// C''=1/(4 ell^2), A''=2, B''=2*alpha.
RcmParameters rcm_uniform_params(double ell, double alpha);

// Threshold C'|Q|^{A'} s^{B'} and tail bound C''|Q|^{A''} s^{B''}.
double rcm_threshold(const RcmParameters& p, long q_size, double s);
double rcm_tail_bound(const RcmParameters& p, long q_size, double s);

// holds iff empirical_tail <= tail bound (slack is the caller's business);
// bounds >= 1 report holds_vacuously.
Verdict rcm_check(const RcmParameters& p, long q_size, double s, double empirical_tail);

}  // namespace fluctlab
