#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluctlab/distributions.hpp"
#include "fluctlab/montecarlo.hpp"

namespace fluctlab {

enum class ExperimentKind {
  fiber_tail,
  modulus_tail,
  interval_prob,
  gaussian_independence,
  wegner,
  partition,
  smooth_theorem,
  rcm_sweep,
  full_suite,
};

// Parsed flat key=value experiment file.  The seed is mandatory; there is no
// wall-clock fallback.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::full_suite;
  MarginalSpec marginal;
  long n = 0;
  int dim = 0;
  int side = 0;
  double s = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double interval_t = std::numeric_limits<double>::quiet_NaN();
  double interval_s = std::numeric_limits<double>::quiet_NaN();
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<double> cover_breakpoints;
  int cover_m = 1;
  MuRule mu_rule = MuRule::eta_median;
  double mu_const = 0.0;
  std::vector<long> q_sizes{4, 9, 16};
  std::vector<double> s_values{0.01, 0.05};
  std::string output = "fluctlab_out";
};

// Throws Error("invalid-config", "<path>:<line>: message") on any problem.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& path_for_errors);

}  // namespace fluctlab
