#pragma once

#include <vector>

#include "fluctlab/rng.hpp"

namespace fluctlab {

enum class MarginalKind { gaussian, uniform, smooth };

// Marginal law of a single potential value.  The built-in smooth family is
// the linear density rho(v) = (1 + beta*(2(v-a)/ell - 1)) / ell on
// [a, a+ell]; beta = 0 reduces it to Unif[a, a+ell].  |beta| < 1 keeps the
// density strictly positive on its support.
struct MarginalSpec {
  MarginalKind kind = MarginalKind::uniform;
  double a = 0.0;     // left endpoint of the support (compact kinds)
  double ell = 1.0;   // support length, > 0 for compact kinds
  double beta = 0.0;  // slope parameter of the smooth family

  static MarginalSpec gaussian();
  static MarginalSpec uniform(double a, double ell);
  static MarginalSpec smooth(double a, double ell, double beta);

  bool compact() const { return kind != MarginalKind::gaussian; }
};

// Density box constants rho_*, rho_bar, C'_rho plus the derived scales
// C_1 = C'_rho / rho_*, ell_* = 1/C_1 and c_* = ell_*/2.  A flat density has
// C_1 = 0; ell_* and c_* are then +infinity.
struct SmoothDensityConstants {
  double rho_star = 0;
  double rho_bar = 0;
  double c_rho_prime = 0;
  double c1 = 0;
  double ell_star = 0;
  double c_star = 0;
};

// An N-tuple of i.i.d. draws together with its marginal descriptor.
struct SampleVector {
  std::vector<double> values;
  MarginalSpec spec;
  long n = 0;
};

// n >= 2 i.i.d. draws, deterministic given the stream.
SampleVector sample(const MarginalSpec& spec, long n, RngStream& stream);

// rho(v); zero outside [a, a+ell] for compact kinds.
double density_at(const MarginalSpec& spec, double v);

// Cumulative distribution function of the marginal.
double cdf_at(const MarginalSpec& spec, double v);

SmoothDensityConstants smooth_constants(const MarginalSpec& spec);

}  // namespace fluctlab
