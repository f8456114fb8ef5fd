#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fluctlab/bounds.hpp"
#include "fluctlab/montecarlo.hpp"

namespace fluctlab {

// Which bound a report row checked.  The first eight tags name the built-in
// closed forms; the last four cover the remaining experiment kinds.
enum class Theorem {
  gaussian_interval,
  gaussian_trace,
  lemma_prob_x,
  lemma_densities,
  thm_prob_nu,
  thm_prob_nu_jl,
  thm_densities,
  rcm,
  trace_modulus,
  interval_modulus,
  gaussian_independence,
  partition_identity,
};

const char* to_string(Theorem t);
const char* to_string(Verdict v);

// One theorem instance: parameters, closed-form bound, empirical frequency
// with confidence interval, verdict.  NaN parameter fields print as empty
// CSV cells.
struct BoundReport {
  Theorem theorem = Theorem::gaussian_interval;
  long n = 0;
  double ell = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  double bound_value = 0.0;
  std::optional<TailEstimate> empirical;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, double> extra;  // additional parameters, JSON only
  std::string note;
};

// Standard verdict rule: vacuous bounds (>= 1) always hold; violation needs
// the one-sided 97.5% criterion wilson_low > bound; otherwise the frequency
// must stay within bound + 3 Wilson half-widths to count as holding.
Verdict judge(double bound, const TailEstimate& estimate);

// Exit status from a report set: 0 all hold, 2 any violated, 3 any
// inconclusive.
int exit_code_for(const std::vector<BoundReport>& reports);

std::string to_csv(const std::vector<BoundReport>& reports);
std::string to_json(const std::vector<BoundReport>& reports, std::uint64_t seed);

// Writes <prefix>.csv and <prefix>.json, creating parent directories.
void emit_report(const std::vector<BoundReport>& reports, std::uint64_t seed,
                 const std::string& prefix);

}  // namespace fluctlab
