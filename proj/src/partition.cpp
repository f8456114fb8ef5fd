#include "fluctlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fluctlab/decomposition.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/parallel.hpp"

namespace fluctlab {

SupportCover make_cover(std::vector<double> breakpoints) {
  if (breakpoints.size() < 2)
    throw Error("invalid-cover", "a cover needs at least two breakpoints");
  SupportCover cover;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (!(breakpoints[k + 1] > breakpoints[k]))
      throw Error("invalid-cover", "breakpoints must be strictly increasing");
    cover.cells.emplace_back(breakpoints[k], breakpoints[k + 1]);
  }
  return cover;
}

SupportCover make_dyadic_cover(double a, double ell, int m) {
  if (m < 0 || m > 16) throw Error("invalid-cover", "dyadic depth must lie in [0,16]");
  const long cells = 1L << m;
  std::vector<double> bp;
  bp.reserve(static_cast<std::size_t>(cells) + 1);
  for (long k = 0; k <= cells; ++k)
    bp.push_back(a + ell * static_cast<double>(k) / static_cast<double>(cells));
  return make_cover(std::move(bp));
}

namespace {

int locate_cell(double v, const SupportCover& cover) {
  // lower-cell tie rule: the first cell with v <= b_k wins
  for (std::size_t k = 0; k < cover.cells.size(); ++k)
    if (v >= cover.cells[k].first && v <= cover.cells[k].second) return static_cast<int>(k);
  throw Error("uncovered-sample", "sample value lies outside the cover");
}

std::uint64_t box_key(const std::vector<int>& ks, std::size_t cells) {
  std::uint64_t key = 0;
  for (int k : ks) key = key * cells + static_cast<std::uint64_t>(k);
  return key;
}

}  // namespace

BoxIndex assign_box(const SampleVector& x, const SupportCover& cover) {
  BoxIndex box;
  box.ks.reserve(x.values.size());
  for (double v : x.values) box.ks.push_back(locate_cell(v, cover));
  return box;
}

double box_probability(const BoxIndex& box, const SupportCover& cover,
                       const MarginalSpec& spec) {
  double p = 1.0;
  for (int k : box.ks) {
    if (k < 0 || static_cast<std::size_t>(k) >= cover.cells.size())
      throw Error("out-of-range", "box index outside the cover");
    const auto& cell = cover.cells[static_cast<std::size_t>(k)];
    p *= cdf_at(spec, cell.second) - cdf_at(spec, cell.first);
  }
  return p;
}

PartitionReport verify_partition_inequality(const TrialPlan& plan, const SupportCover& cover,
                                            MuRule rule, double mu_const) {
  if (!plan.spec.compact())
    throw Error("fiber-undefined", "partition runs need a compact-support marginal");
  if (plan.trials < 1) throw Error("out-of-range", "need at least one trial");
  const double bits = static_cast<double>(plan.n) *
                      std::log2(static_cast<double>(cover.cells.size()));
  if (bits >= 63.0) throw Error("invalid-cover", "cover too fine for this sample size");

  struct Record {
    std::uint64_t key = 0;
    std::uint8_t hit = 0;
  };
  std::vector<Record> rec(static_cast<std::size_t>(plan.trials));
  for_each_trial(plan.trials, plan.workers, [&](std::int64_t t) {
    RngStream stream(plan.seed, static_cast<std::uint64_t>(t));
    const SampleVector x = sample(plan.spec, plan.n, stream);
    const FluctuationFrame frame = decompose(x);
    double mu = mu_const;
    if (rule != MuRule::constant) {
      std::vector<double> etas = frame.etas;
      std::sort(etas.begin(), etas.end());
      const std::size_t m = etas.size();
      const double stat = rule == MuRule::eta_median
                              ? (m % 2 == 1 ? etas[m / 2] : 0.5 * (etas[m / 2 - 1] + etas[m / 2]))
                              : etas.back();
      mu = plan.spec.a + 0.5 * plan.spec.ell + stat;
    }
    Record& r = rec[static_cast<std::size_t>(t)];
    r.hit = (frame.xi >= mu && frame.xi <= mu + plan.s) ? 1 : 0;
    r.key = box_key(assign_box(x, cover).ks, cover.cells.size());
  });

  struct Counts {
    std::int64_t occupancy = 0;
    std::int64_t hits = 0;
  };
  std::map<std::uint64_t, Counts> by_box;  // ordered keys keep output deterministic
  std::int64_t total_hits = 0;
  for (const Record& r : rec) {
    Counts& c = by_box[r.key];
    ++c.occupancy;
    c.hits += r.hit;
    total_hits += r.hit;
  }

  PartitionReport rep;
  rep.unconditional = make_tail_estimate(total_hits, plan.trials);
  rep.occupied_boxes = static_cast<std::int64_t>(by_box.size());

  std::int64_t sum_box_hits = 0;
  double weighted_theoretical = 0.0;
  double sup = 0.0;
  std::int64_t sup_hits = 0, sup_occ = 1;
  for (const auto& [key, counts] : by_box) {
    sum_box_hits += counts.hits;
    BoxStat stat;
    stat.key = key;
    std::uint64_t k = key;
    stat.ks.assign(static_cast<std::size_t>(plan.n), 0);
    for (long i = plan.n - 1; i >= 0; --i) {
      stat.ks[static_cast<std::size_t>(i)] = static_cast<int>(k % cover.cells.size());
      k /= cover.cells.size();
    }
    stat.occupancy = counts.occupancy;
    stat.hits = counts.hits;
    stat.frequency = static_cast<double>(counts.hits) / static_cast<double>(counts.occupancy);
    std::tie(stat.wilson_low, stat.wilson_high) = wilson_interval(counts.hits, counts.occupancy);
    BoxIndex box;
    box.ks = stat.ks;
    stat.p_theoretical = box_probability(box, cover, plan.spec);
    stat.low_occupancy = counts.occupancy < 100;
    if (stat.low_occupancy) ++rep.low_occupancy_boxes;
    weighted_theoretical += stat.p_theoretical * stat.frequency;
    // track the sup as an exact rational hits/occupancy
    if (static_cast<double>(counts.hits) * static_cast<double>(sup_occ) >
        static_cast<double>(sup_hits) * static_cast<double>(counts.occupancy)) {
      sup_hits = counts.hits;
      sup_occ = counts.occupancy;
    }
    sup = std::max(sup, stat.frequency);
    rep.boxes.push_back(std::move(stat));
  }

  rep.count_identity = sum_box_hits == total_hits;
  rep.weighted_empirical = static_cast<double>(sum_box_hits) / static_cast<double>(plan.trials);
  rep.weighted_theoretical = weighted_theoretical;
  rep.sup_conditional = sup;
  // (b) <= (c) via integer cross-multiplication: total*occ* <= hits* * T
  rep.sup_dominates =
      total_hits * sup_occ <= sup_hits * static_cast<std::int64_t>(plan.trials);
  return rep;
}

}  // namespace fluctlab
