#pragma once

#include <cstdint>
#include <vector>

#include "fluctlab/distributions.hpp"
#include "fluctlab/montecarlo.hpp"

namespace fluctlab {

// Ordered cover of the marginal support by intervals [a_k, b_k] with
// a_{k+1} >= b_k.
struct SupportCover {
  std::vector<std::pair<double, double>> cells;

  std::size_t size() const { return cells.size(); }
};

SupportCover make_cover(std::vector<double> breakpoints);
// Dyadic split of [a, a+ell] into 2^m cells.
SupportCover make_dyadic_cover(double a, double ell, int m);

// Cell index per coordinate; boundary values go to the lower cell.
struct BoxIndex {
  std::vector<int> ks;
};

BoxIndex assign_box(const SampleVector& x, const SupportCover& cover);

// Product of the marginal masses of the box's cells.
double box_probability(const BoxIndex& box, const SupportCover& cover, const MarginalSpec& spec);

struct BoxStat {
  std::uint64_t key = 0;
  std::vector<int> ks;
  std::int64_t occupancy = 0;
  std::int64_t hits = 0;
  double frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double p_theoretical = 0.0;
  bool low_occupancy = false;  // fewer than 100 visits
};

// One run, three readings of P{xi in [mu~, mu~+s]}: the unconditional
// frequency (a), the box-weighted conditional average (b) -- an exact count
// decomposition of (a) -- and the sup over boxes (c).  count_identity and
// sup_dominates are exact integer facts, not tolerance checks.
struct PartitionReport {
  TailEstimate unconditional;        // (a)
  double weighted_empirical = 0.0;   // (b) with empirical box masses
  double weighted_theoretical = 0.0; // (b) with closed-form box masses
  double sup_conditional = 0.0;      // (c)
  bool count_identity = false;       // hits(a) == sum_k hits_k
  bool sup_dominates = false;        // (b) <= (c) as exact rationals
  std::int64_t occupied_boxes = 0;
  std::int64_t low_occupancy_boxes = 0;
  std::vector<BoxStat> boxes;        // ordered by box key
};

PartitionReport verify_partition_inequality(const TrialPlan& plan, const SupportCover& cover,
                                            MuRule rule, double mu_const = 0.0);

}  // namespace fluctlab
