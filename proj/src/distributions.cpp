#include "fluctlab/distributions.hpp"

#include <cmath>
#include <limits>

#include "fluctlab/errors.hpp"

namespace fluctlab {

MarginalSpec MarginalSpec::gaussian() {
  MarginalSpec m;
  m.kind = MarginalKind::gaussian;
  return m;
}

MarginalSpec MarginalSpec::uniform(double a, double ell) {
  if (!(ell > 0)) throw Error("invalid-marginal", "uniform support length must be positive");
  MarginalSpec m;
  m.kind = MarginalKind::uniform;
  m.a = a;
  m.ell = ell;
  return m;
}

MarginalSpec MarginalSpec::smooth(double a, double ell, double beta) {
  if (!(ell > 0)) throw Error("invalid-marginal", "smooth support length must be positive");
  if (!(std::abs(beta) < 1.0))
    throw Error("density-not-positive", "|beta| must be < 1 for a strictly positive density");
  MarginalSpec m;
  m.kind = MarginalKind::smooth;
  m.a = a;
  m.ell = ell;
  m.beta = beta;
  return m;
}

namespace {

// Quantile of the unit-interval linear density 1 + beta*(2u - 1).
// CDF is F(u) = (1-beta)u + beta u^2; the positive root written in the
// cancellation-free form below is valid for all |beta| < 1 including 0.
double linear_quantile(double p, double beta) {
  const double b = 1.0 - beta;
  return 2.0 * p / (b + std::sqrt(b * b + 4.0 * beta * p));
}

}  // namespace

SampleVector sample(const MarginalSpec& spec, long n, RngStream& stream) {
  if (n < 2) throw Error("invalid-sample-size", "sample size must be at least 2");
  SampleVector out;
  out.spec = spec;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n));
  switch (spec.kind) {
    case MarginalKind::gaussian:
      for (auto& v : out.values) v = stream.next_gaussian();
      break;
    case MarginalKind::uniform:
      for (auto& v : out.values) v = spec.a + spec.ell * stream.next_double();
      break;
    case MarginalKind::smooth:
      for (auto& v : out.values)
        v = spec.a + spec.ell * linear_quantile(stream.next_double(), spec.beta);
      break;
  }
  return out;
}

double density_at(const MarginalSpec& spec, double v) {
  switch (spec.kind) {
    case MarginalKind::gaussian: {
      static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
      return inv_sqrt_2pi * std::exp(-0.5 * v * v);
    }
    case MarginalKind::uniform:
      return (v >= spec.a && v <= spec.a + spec.ell) ? 1.0 / spec.ell : 0.0;
    case MarginalKind::smooth: {
      if (v < spec.a || v > spec.a + spec.ell) return 0.0;
      const double u = (v - spec.a) / spec.ell;
      return (1.0 + spec.beta * (2.0 * u - 1.0)) / spec.ell;
    }
  }
  return 0.0;
}

double cdf_at(const MarginalSpec& spec, double v) {
  switch (spec.kind) {
    case MarginalKind::gaussian:
      return 0.5 * std::erfc(-v / std::sqrt(2.0));
    case MarginalKind::uniform: {
      const double u = (v - spec.a) / spec.ell;
      return u <= 0 ? 0.0 : (u >= 1 ? 1.0 : u);
    }
    case MarginalKind::smooth: {
      const double u = (v - spec.a) / spec.ell;
      if (u <= 0) return 0.0;
      if (u >= 1) return 1.0;
      return (1.0 - spec.beta) * u + spec.beta * u * u;
    }
  }
  return 0.0;
}

SmoothDensityConstants smooth_constants(const MarginalSpec& spec) {
  if (spec.kind == MarginalKind::gaussian)
    throw Error("invalid-marginal", "smooth constants require a compact-support marginal");
  const double ab = std::abs(spec.beta);
  if (ab >= 1.0)
    throw Error("density-not-positive", "|beta| must be < 1 for a strictly positive density");
  SmoothDensityConstants c;
  c.rho_star = (1.0 - ab) / spec.ell;
  c.rho_bar = (1.0 + ab) / spec.ell;
  c.c_rho_prime = 2.0 * ab / (spec.ell * spec.ell);
  c.c1 = c.c_rho_prime / c.rho_star;
  if (c.c1 == 0.0) {
    c.ell_star = std::numeric_limits<double>::infinity();
    c.c_star = std::numeric_limits<double>::infinity();
  } else {
    c.ell_star = 1.0 / c.c1;
    c.c_star = 0.5 * c.ell_star;
  }
  return c;
}

}  // namespace fluctlab
