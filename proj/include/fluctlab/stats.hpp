#pragma once

#include <vector>

namespace fluctlab {

// Regularized upper incomplete gamma Q(a, x); series for small x, continued
// fraction otherwise.
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees.
double chi_square_pvalue(double statistic, int dof);

// Kolmogorov-Smirnov distance between an ascending sample and a CDF given as
// precomputed values at those sample points.
double ks_distance_sorted(const std::vector<double>& sorted_samples,
                          const std::vector<double>& cdf_at_samples);

// Pearson correlation of two equal-length series.
double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace fluctlab
