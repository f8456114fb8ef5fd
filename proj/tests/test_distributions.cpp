#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluctlab/distributions.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/stats.hpp"
#include "oracles.hpp"

using namespace fluctlab;

TEST_CASE("density values") {
  CHECK(density_at(MarginalSpec::uniform(0, 2), 1.0) == doctest::Approx(0.5));
  CHECK(density_at(MarginalSpec::uniform(0, 1), -0.1) == 0.0);
  CHECK(density_at(MarginalSpec::uniform(0, 1), 1.1) == 0.0);

  const MarginalSpec s = MarginalSpec::smooth(0, 1, 0.5);
  CHECK(density_at(s, 0.0) == doctest::Approx(0.5));
  CHECK(density_at(s, 1.0) == doctest::Approx(1.5));
  CHECK(density_at(s, 0.5) == doctest::Approx(1.0));

  CHECK(density_at(MarginalSpec::gaussian(), 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2 * M_PI)));
}

TEST_CASE("density integrates to one") {
  auto integrate = [](const MarginalSpec& spec, double lo, double hi) {
    const int nodes = 10000;
    const double h = (hi - lo) / (nodes - 1);
    double sum = 0.5 * (density_at(spec, lo) + density_at(spec, hi));
    for (int i = 1; i + 1 < nodes; ++i) sum += density_at(spec, lo + i * h);
    return sum * h;
  };
  CHECK(integrate(MarginalSpec::uniform(0, 1), 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(MarginalSpec::uniform(-2, 3), -2, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(MarginalSpec::smooth(0, 1, 0.5), 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(MarginalSpec::smooth(1, 2, -0.3), 1, 3) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(MarginalSpec::gaussian(), -8, 8) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("smooth constants") {
  const SmoothDensityConstants c = smooth_constants(MarginalSpec::smooth(0, 1, 0.5));
  CHECK(c.rho_star == doctest::Approx(0.5));
  CHECK(c.rho_bar == doctest::Approx(1.5));
  CHECK(c.c_rho_prime == doctest::Approx(1.0));
  CHECK(c.c1 == doctest::Approx(2.0));
  CHECK(c.ell_star == doctest::Approx(0.5));
  CHECK(c.c_star == doctest::Approx(0.25));

  // flat density: zero derivative, unbounded scales
  const SmoothDensityConstants flat = smooth_constants(MarginalSpec::uniform(0, 1));
  CHECK(flat.c_rho_prime == 0.0);
  CHECK(std::isinf(flat.c_star));
  CHECK(std::isinf(flat.ell_star));

  const SmoothDensityConstants d = smooth_constants(MarginalSpec::smooth(0, 2, 0.9));
  CHECK(d.rho_star == doctest::Approx(0.05));
  CHECK(d.rho_bar == doctest::Approx(0.95));
  CHECK(d.c_rho_prime == doctest::Approx(0.45));
  CHECK(d.c1 == doctest::Approx(9.0));
  // exact scale identities: ell_* C_1 = 1 and c_* = ell_*/2
  CHECK(d.ell_star * d.c1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.c_star == doctest::Approx(0.5 * d.ell_star).epsilon(1e-15));
  CHECK(d.c_star == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(MarginalSpec::smooth(0, 1, 1.0), Error);
  CHECK_THROWS_AS(MarginalSpec::smooth(0, 1, -1.2), Error);
  CHECK_THROWS_AS(MarginalSpec::uniform(0, 0.0), Error);
  RngStream stream(7, 0);
  CHECK_THROWS_AS(sample(MarginalSpec::uniform(0, 1), 1, stream), Error);
  CHECK_THROWS_AS(smooth_constants(MarginalSpec::gaussian()), Error);
}

TEST_CASE("sampling determinism and range") {
  RngStream s1(7, 3);
  RngStream s2(7, 3);
  const SampleVector a = sample(MarginalSpec::gaussian(), 2, s1);
  const SampleVector b = sample(MarginalSpec::gaussian(), 2, s2);
  CHECK(a.values == b.values);

  RngStream s3(7, 0);
  const SampleVector u = sample(MarginalSpec::uniform(0, 1), 3, s3);
  for (double v : u.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  RngStream s4(8, 3);
  const SampleVector c = sample(MarginalSpec::gaussian(), 2, s4);
  CHECK(a.values != c.values);
}

TEST_CASE("smooth sampling matches its CDF") {
  const long n = 100000;
  for (double beta : {0.0, 0.5, -0.7}) {
    const MarginalSpec spec = MarginalSpec::smooth(0, 1, beta);
    RngStream stream(11, 0);
    const SampleVector x = sample(spec, n, stream);
    std::vector<double> sorted = x.values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cdf(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) cdf[i] = cdf_at(spec, sorted[i]);
    CHECK(ks_distance_sorted(sorted, cdf) < 0.01);
  }
}

TEST_CASE("moment sanity") {
  const long n = 100000;
  RngStream s1(5, 0);
  const SampleVector u = sample(MarginalSpec::uniform(0, 1), n, s1);
  double mean = 0;
  for (double v : u.values) mean += v;
  mean /= n;
  const double sigma = 1.0 / std::sqrt(12.0);
  CHECK(std::abs(mean - 0.5) < 4.0 * sigma / std::sqrt(static_cast<double>(n)));

  RngStream s2(5, 1);
  const SampleVector g = sample(MarginalSpec::gaussian(), n, s2);
  double gm = 0;
  for (double v : g.values) gm += v;
  gm /= n;
  double var = 0;
  for (double v : g.values) var += (v - gm) * (v - gm);
  var /= (n - 1);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
