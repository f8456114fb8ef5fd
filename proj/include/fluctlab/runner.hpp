#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluctlab/config.hpp"
#include "fluctlab/report.hpp"

namespace fluctlab {

// Reports for one experiment config; throws Error on bad parameters.
std::vector<BoundReport> run_experiment(const ExperimentConfig& cfg);

// The full verification battery at one seed.  Output files never mention the
// worker count, so results are byte-identical for any worker split.
std::vector<BoundReport> build_suite(std::uint64_t seed, int workers);

// Runs a config file end to end: executes, writes <output>.csv/.json and
// maps verdicts to the exit status (0 all hold, 1 usage/config error,
// 2 any violated, 3 any inconclusive).  Diagnostics go to `diag`.
int run(const std::string& config_path, std::string& diag);

// `fluctlab suite`: the battery at the given seed, written to prefix.
int run_suite(std::uint64_t seed, const std::string& out_prefix, int workers,
              std::string& diag);

// Closed-form bound table for quick inspection.
std::string print_bounds(long n, double ell, double s, double delta, double alpha);

}  // namespace fluctlab
