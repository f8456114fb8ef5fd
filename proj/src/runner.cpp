#include "fluctlab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fluctlab/anderson.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/parallel.hpp"
#include "fluctlab/partition.hpp"
#include "fluctlab/smoothdensity.hpp"

namespace fluctlab {

namespace {

BoundReport base_report(Theorem theorem, long n, std::uint64_t seed) {
  BoundReport rep;
  rep.theorem = theorem;
  rep.n = n;
  rep.seed = seed;
  return rep;
}

// fiber_tail: the same hit set judged against both closed forms
std::vector<BoundReport> fiber_tail_reports(const MarginalSpec& spec, long n, double r,
                                            std::int64_t trials, std::uint64_t seed,
                                            int workers) {
  TrialPlan plan{spec, n, trials, 0.0, 0.0, seed, TrialTarget::fiber_tail, workers};
  const TailEstimate est = estimate_fiber_tail(plan, r);
  const double rho_bar = smooth_constants(spec).rho_bar;

  std::vector<BoundReport> out;
  BoundReport densities = base_report(Theorem::lemma_densities, n, seed);
  densities.ell = spec.ell;
  densities.r = r;
  densities.bound_value = lemma_densities_bound(n, r, rho_bar);
  densities.empirical = est;
  densities.verdict = judge(densities.bound_value, est);
  densities.extra["rho_bar"] = rho_bar;
  out.push_back(std::move(densities));

  if (r > 0 && r <= spec.ell) {
    BoundReport probx = base_report(Theorem::lemma_prob_x, n, seed);
    probx.ell = spec.ell;
    probx.r = r;
    probx.delta = r;
    probx.bound_value = lemma_prob_x_bound(n, r, spec.ell);
    probx.empirical = est;
    probx.verdict = judge(probx.bound_value, est);
    probx.note = "event {|X(Y)| <= delta}; the bound also covers the sqrt(N)-rescaled event";
    out.push_back(std::move(probx));
  }
  return out;
}

std::vector<BoundReport> modulus_tail_reports(const MarginalSpec& spec, long n, double s,
                                              double delta, std::int64_t trials,
                                              std::uint64_t seed, int workers) {
  TrialPlan plan{spec, n, trials, s, delta, seed, TrialTarget::modulus_tail, workers};
  const TailEstimate est = estimate_modulus_tail(plan);

  std::vector<BoundReport> out;
  for (const Theorem theorem : {Theorem::thm_prob_nu, Theorem::thm_prob_nu_jl}) {
    BoundReport rep = base_report(theorem, n, seed);
    rep.ell = spec.ell;
    rep.s = s;
    rep.delta = delta;
    rep.bound_value = theorem == Theorem::thm_prob_nu ? thm_prob_nu_bound(n, delta, spec.ell)
                                                      : thm_prob_nu_jl_bound(n, delta, spec.ell);
    rep.empirical = est;
    rep.verdict = judge(rep.bound_value, est);
    out.push_back(std::move(rep));
  }
  // record which of the two quadratic/linear bounds was tighter
  out[0].extra["tighter"] = out[0].bound_value <= out[1].bound_value ? 1.0 : 0.0;
  out[1].extra["tighter"] = 1.0 - out[0].extra["tighter"];
  return out;
}

BoundReport interval_prob_report(const MarginalSpec& spec, long n, double s, MuRule rule,
                                 double mu_const, std::int64_t trials, std::uint64_t seed,
                                 int workers) {
  TrialPlan plan{spec, n, trials, s, 0.0, seed, TrialTarget::interval_prob, workers};
  const IntervalProbResult res = estimate_interval_probability(plan, rule, mu_const);
  BoundReport rep = base_report(Theorem::interval_modulus, n, seed);
  rep.ell = spec.ell;
  rep.s = s;
  rep.bound_value = res.mean_clamped_modulus;
  rep.empirical = res.estimate;
  rep.verdict = judge(rep.bound_value, res.estimate);
  rep.extra["mean_conditional_probability"] = res.mean_conditional_probability;
  rep.extra["mu_rule"] = static_cast<double>(static_cast<int>(rule));
  if (rule == MuRule::constant) rep.extra["mu_const"] = mu_const;
  rep.note = "frequency vs trial average of min(1, nu_N(s))";
  return rep;
}

BoundReport gaussian_interval_report(long n, double t, double s, std::int64_t trials,
                                     std::uint64_t seed, int workers) {
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  MarginalSpec spec = MarginalSpec::gaussian();
  for_each_trial(trials, workers, [&](std::int64_t k) {
    RngStream stream(seed, static_cast<std::uint64_t>(k));
    const SampleVector x = sample(spec, n, stream);
    double sum = 0.0;
    for (double v : x.values) sum += v;
    const double xi = sum / static_cast<double>(n);
    hit[static_cast<std::size_t>(k)] = (xi >= t && xi <= t + s) ? 1 : 0;
  });
  std::int64_t hits = 0;
  for (std::uint8_t h : hit) hits += h;
  const TailEstimate est = make_tail_estimate(hits, trials);

  BoundReport rep = base_report(Theorem::gaussian_interval, n, seed);
  rep.s = s;
  rep.bound_value = gaussian_interval_bound(n, s);
  rep.empirical = est;
  rep.verdict = judge(rep.bound_value, est);
  rep.extra["interval_t"] = t;
  return rep;
}

std::vector<BoundReport> independence_reports(long n, std::int64_t trials, std::uint64_t seed,
                                              int workers) {
  const IndependenceReport ind = gaussian_independence_check(n, trials, seed, workers);
  std::vector<BoundReport> out;

  BoundReport corr = base_report(Theorem::gaussian_independence, n, seed);
  corr.bound_value = ind.correlation_threshold;
  TailEstimate ce;
  ce.hits = 0;
  ce.trials = trials;
  ce.frequency = ind.max_abs_correlation;
  ce.wilson_low = ind.max_abs_correlation;
  ce.wilson_high = ind.max_abs_correlation;
  corr.empirical = ce;
  corr.verdict = ind.correlations_ok ? Verdict::holds : Verdict::violated;
  corr.note = "max |corr(xi, eta_i)| vs 3/sqrt(T)";
  out.push_back(std::move(corr));

  BoundReport chi = base_report(Theorem::gaussian_independence, n, seed);
  chi.bound_value = 0.999;
  TailEstimate xe;
  xe.hits = 0;
  xe.trials = trials;
  xe.frequency = 1.0 - ind.p_value;
  xe.wilson_low = xe.frequency;
  xe.wilson_high = xe.frequency;
  chi.empirical = xe;
  chi.verdict = ind.chi_square_ok ? Verdict::holds : Verdict::violated;
  chi.extra["chi_square"] = ind.chi_square;
  chi.extra["p_value"] = ind.p_value;
  chi.extra["bins"] = static_cast<double>(ind.bins);
  chi.note = "1 - p of the conditional-vs-unconditional chi-square vs 0.999";
  out.push_back(std::move(chi));
  return out;
}

BoundReport wegner_report(const LatticeCube& cube, const MarginalSpec& spec, double t, double s,
                          std::int64_t trials, std::uint64_t seed, int workers) {
  const WegnerResult res = wegner_experiment(cube, spec, t, s, trials, seed, workers);
  const long sites = cube.sites();
  BoundReport rep = base_report(
      res.modulus_form ? Theorem::trace_modulus : Theorem::gaussian_trace, sites, seed);
  rep.s = s;
  if (spec.compact()) rep.ell = spec.ell;
  rep.bound_value = res.bound;
  rep.empirical = res.estimate;
  rep.verdict = judge(rep.bound_value, res.estimate);
  rep.extra["dim"] = cube.dim;
  rep.extra["side"] = cube.side;
  rep.extra["interval_t"] = t;
  return rep;
}

BoundReport partition_report(const TrialPlan& plan, const SupportCover& cover, MuRule rule,
                             double mu_const) {
  const PartitionReport part = verify_partition_inequality(plan, cover, rule, mu_const);
  BoundReport rep = base_report(Theorem::partition_identity, plan.n, plan.seed);
  rep.ell = plan.spec.ell;
  rep.s = plan.s;
  rep.bound_value = part.sup_conditional;
  rep.empirical = part.unconditional;
  rep.verdict = part.count_identity && part.sup_dominates
                    ? (part.sup_conditional >= 1.0 ? Verdict::holds_vacuously : Verdict::holds)
                    : Verdict::violated;
  rep.extra["cells"] = static_cast<double>(cover.size());
  rep.extra["weighted_empirical"] = part.weighted_empirical;
  rep.extra["weighted_theoretical"] = part.weighted_theoretical;
  rep.extra["occupied_boxes"] = static_cast<double>(part.occupied_boxes);
  rep.extra["low_occupancy_boxes"] = static_cast<double>(part.low_occupancy_boxes);
  rep.note = "unconditional frequency vs sup of per-box conditional frequencies";
  return rep;
}

BoundReport smooth_theorem_report(const MarginalSpec& spec, long n, double s, double alpha,
                                  std::int64_t trials, std::uint64_t seed, int workers) {
  const SmoothTailResult res = thm_densities_experiment(spec, n, s, alpha, trials, seed, workers);
  BoundReport rep = base_report(Theorem::thm_densities, n, seed);
  rep.ell = spec.ell;
  rep.s = s;
  rep.delta = res.delta;
  rep.alpha = alpha;
  rep.bound_value = res.bound;
  rep.empirical = res.estimate;
  rep.verdict = judge(rep.bound_value, res.estimate);
  rep.extra["beta"] = spec.beta;
  rep.extra["threshold"] = res.threshold;
  rep.extra["inclusion_counterexamples"] =
      static_cast<double>(res.inclusion_counterexamples);
  rep.extra["profiles_built"] = static_cast<double>(res.profiles_built);
  rep.note = "bound 4 rho_bar^2 N^2 delta^2; the displayed ell^2 denominator is recovered "
             "in the uniform limit rho_bar = 1/ell";
  if (res.inclusion_counterexamples > 0) rep.verdict = Verdict::violated;
  return rep;
}

std::vector<BoundReport> rcm_reports(const MarginalSpec& spec, const std::vector<long>& q_sizes,
                                     const std::vector<double>& s_values, double alpha,
                                     std::int64_t trials, std::uint64_t seed, int workers) {
  const RcmParameters params = rcm_uniform_params(spec.ell, alpha);
  std::vector<BoundReport> out;
  for (long q : q_sizes) {
    for (double s : s_values) {
      const double threshold = rcm_threshold(params, q, s);
      // {nu >= threshold} happens exactly when the fiber is shorter than
      // sqrt(N) * s / threshold
      const double r = std::sqrt(static_cast<double>(q)) * s / threshold;
      TrialPlan plan{spec, q, trials, s, 0.0, seed, TrialTarget::rcm_sweep, workers};
      const TailEstimate est = estimate_fiber_tail(plan, r);

      BoundReport rep = base_report(Theorem::rcm, q, seed);
      rep.ell = spec.ell;
      rep.s = s;
      rep.alpha = alpha;
      rep.bound_value = rcm_tail_bound(params, q, s);
      rep.empirical = est;
      const Verdict check = rcm_check(params, q, s, est.frequency);
      rep.verdict = check == Verdict::holds ? judge(rep.bound_value, est) : check;
      rep.extra["threshold"] = threshold;
      rep.extra["b_prime"] = params.b_prime;
      rep.extra["b_double"] = params.b_double;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

void append(std::vector<BoundReport>& into, std::vector<BoundReport> reports) {
  for (auto& r : reports) into.push_back(std::move(r));
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error("invalid-config", message);
}

double require_value(double v, const char* key) {
  if (std::isnan(v)) config_error(std::string("missing required key '") + key + "'");
  return v;
}

}  // namespace

std::vector<BoundReport> run_experiment(const ExperimentConfig& cfg) {
  const int workers = resolve_workers(cfg.workers);
  std::vector<BoundReport> out;
  switch (cfg.experiment) {
    case ExperimentKind::fiber_tail: {
      if (cfg.n < 2) config_error("fiber_tail needs n >= 2");
      if (cfg.trials < 1) config_error("fiber_tail needs trials >= 1");
      append(out, fiber_tail_reports(cfg.marginal, cfg.n, require_value(cfg.r, "r"), cfg.trials,
                                     cfg.seed, workers));
      break;
    }
    case ExperimentKind::modulus_tail: {
      if (cfg.n < 2) config_error("modulus_tail needs n >= 2");
      if (cfg.trials < 1) config_error("modulus_tail needs trials >= 1");
      const double s = require_value(cfg.s, "s");
      const double delta = require_value(cfg.delta, "delta");
      if (!(delta > 0) || delta > s || s > cfg.marginal.ell)
        config_error("modulus_tail needs 0 < delta <= s <= ell");
      append(out, modulus_tail_reports(cfg.marginal, cfg.n, s, delta, cfg.trials, cfg.seed,
                                       workers));
      break;
    }
    case ExperimentKind::interval_prob: {
      if (cfg.n < 2) config_error("interval_prob needs n >= 2");
      if (cfg.trials < 1) config_error("interval_prob needs trials >= 1");
      const double s = require_value(cfg.interval_s, "interval_s");
      const double mu = cfg.mu_rule == MuRule::constant
                            ? (std::isnan(cfg.interval_t) ? cfg.mu_const : cfg.interval_t)
                            : 0.0;
      out.push_back(interval_prob_report(cfg.marginal, cfg.n, s, cfg.mu_rule, mu, cfg.trials,
                                         cfg.seed, workers));
      break;
    }
    case ExperimentKind::gaussian_independence: {
      if (cfg.n < 2) config_error("gaussian_independence needs n >= 2");
      if (cfg.trials < 1) config_error("gaussian_independence needs trials >= 1");
      append(out, independence_reports(cfg.n, cfg.trials, cfg.seed, workers));
      break;
    }
    case ExperimentKind::wegner: {
      if (cfg.dim < 1 || cfg.side < 1) config_error("wegner needs dim >= 1 and side >= 1");
      if (cfg.trials < 1) config_error("wegner needs trials >= 1");
      const double t = require_value(cfg.interval_t, "interval_t");
      const double s = require_value(cfg.interval_s, "interval_s");
      LatticeCube cube{cfg.dim, cfg.side};
      out.push_back(wegner_report(cube, cfg.marginal, t, s, cfg.trials, cfg.seed, workers));
      break;
    }
    case ExperimentKind::partition: {
      if (cfg.n < 2) config_error("partition needs n >= 2");
      if (cfg.trials < 1) config_error("partition needs trials >= 1");
      const double s = require_value(cfg.interval_s, "interval_s");
      SupportCover cover = cfg.cover_breakpoints.empty()
                               ? make_dyadic_cover(cfg.marginal.a, cfg.marginal.ell, cfg.cover_m)
                               : make_cover(cfg.cover_breakpoints);
      TrialPlan plan{cfg.marginal, cfg.n,    cfg.trials,
                     s,            0.0,      cfg.seed,
                     TrialTarget::interval_prob, workers};
      out.push_back(partition_report(plan, cover, cfg.mu_rule, cfg.mu_const));
      break;
    }
    case ExperimentKind::smooth_theorem: {
      if (cfg.n < 2) config_error("smooth_theorem needs n >= 2");
      if (cfg.trials < 1) config_error("smooth_theorem needs trials >= 1");
      out.push_back(smooth_theorem_report(cfg.marginal, cfg.n, require_value(cfg.s, "s"),
                                          require_value(cfg.alpha, "alpha"), cfg.trials,
                                          cfg.seed, workers));
      break;
    }
    case ExperimentKind::rcm_sweep: {
      if (cfg.trials < 1) config_error("rcm_sweep needs trials >= 1");
      const double alpha = std::isnan(cfg.alpha) ? 1.0 / 3.0 : cfg.alpha;
      if (cfg.marginal.kind != MarginalKind::uniform)
        config_error("rcm_sweep checks the uniform parameter set");
      append(out, rcm_reports(cfg.marginal, cfg.q_sizes, cfg.s_values, alpha, cfg.trials,
                              cfg.seed, workers));
      break;
    }
    case ExperimentKind::full_suite:
      return build_suite(cfg.seed, workers);
  }
  return out;
}

std::vector<BoundReport> build_suite(std::uint64_t seed, int workers) {
  std::vector<BoundReport> out;
  const MarginalSpec unit = MarginalSpec::uniform(0.0, 1.0);

  // gaussian density bound at the most concentrated interval
  out.push_back(gaussian_interval_report(4, 0.0, 0.1, 100000, seed, workers));
  out.push_back(gaussian_interval_report(16, 0.0, 0.1, 100000, seed, workers));

  // fiber-length tails; N = 2 sits exactly on the quadratic bound
  for (double r : {0.05, 0.1, 0.2})
    append(out, fiber_tail_reports(unit, 2, r, 100000, seed, workers));
  append(out, fiber_tail_reports(unit, 4, 0.1, 100000, seed, workers));

  // the standard modulus grid
  for (long n : {2L, 4L, 8L, 16L})
    for (double s : {0.01, 0.05})
      for (double frac : {0.1, 0.5})
        append(out, modulus_tail_reports(unit, n, s, s * frac, 100000, seed, workers));

  // interval probabilities under a constant and a fluctuation-based anchor
  out.push_back(interval_prob_report(unit, 4, 0.1, MuRule::constant, 0.4, 100000, seed, workers));
  out.push_back(
      interval_prob_report(unit, 4, 0.1, MuRule::eta_median, 0.0, 100000, seed, workers));

  append(out, independence_reports(4, 100000, seed, workers));

  // eigenvalue counting near the middle of the spectrum
  const MarginalSpec gauss = MarginalSpec::gaussian();
  out.push_back(wegner_report(LatticeCube{1, 4}, gauss, 1.975, 0.05, 10000, seed, workers));
  out.push_back(wegner_report(LatticeCube{1, 8}, gauss, 1.975, 0.05, 10000, seed, workers));
  out.push_back(wegner_report(LatticeCube{2, 2}, gauss, 3.975, 0.05, 10000, seed, workers));
  out.push_back(wegner_report(LatticeCube{1, 4}, unit, 2.475, 0.05, 10000, seed, workers));

  // partition identities over dyadic covers
  for (long n : {2L, 4L}) {
    for (int m : {1, 2}) {
      TrialPlan plan{unit, n, 100000, 0.1, 0.0, seed, TrialTarget::interval_prob, workers};
      out.push_back(
          partition_report(plan, make_dyadic_cover(0.0, 1.0, m), MuRule::eta_median, 0.0));
    }
  }

  // smooth-density theorem at delta = 0.9 c_*(beta=1/2) N^{-3/2}
  {
    const double c_star = smooth_constants(MarginalSpec::smooth(0.0, 1.0, 0.5)).c_star;
    const double delta = 0.9 * c_star * std::pow(4.0, -1.5);
    const double alpha = 0.5;
    const double s = delta * delta;  // s^alpha = delta
    out.push_back(
        smooth_theorem_report(MarginalSpec::smooth(0.0, 1.0, 0.0), 4, s, alpha, 10000, seed,
                              workers));
    out.push_back(
        smooth_theorem_report(MarginalSpec::smooth(0.0, 1.0, 0.5), 4, s, alpha, 10000, seed,
                              workers));
  }

  append(out, rcm_reports(unit, {4, 9, 16}, {0.01, 0.05}, 1.0 / 3.0, 100000, seed, workers));
  return out;
}

int run(const std::string& config_path, std::string& diag) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config_file(config_path);
  } catch (const Error& e) {
    diag = e.what();
    return 1;
  }
  std::vector<BoundReport> reports;
  try {
    reports = run_experiment(cfg);
  } catch (const Error& e) {
    diag = e.what();
    return 1;
  }
  try {
    emit_report(reports, cfg.seed, cfg.output);
  } catch (const Error& e) {
    diag = e.what();
    return 1;
  }
  return exit_code_for(reports);
}

int run_suite(std::uint64_t seed, const std::string& out_prefix, int workers,
              std::string& diag) {
  try {
    const std::vector<BoundReport> reports = build_suite(seed, resolve_workers(workers));
    emit_report(reports, seed, out_prefix);
    return exit_code_for(reports);
  } catch (const Error& e) {
    diag = e.what();
    return 1;
  }
}

std::string print_bounds(long n, double ell, double s, double delta, double alpha) {
  std::ostringstream os;
  char line[160];
  auto row = [&](const char* name, double value, const char* detail) {
    std::snprintf(line, sizeof line, "  %-22s %-24.17g %s\n", name, value, detail);
    os << line;
  };
  os << "closed-form bounds at n=" << n << " ell=" << ell << " s=" << s << " delta=" << delta
     << " alpha=" << alpha << "\n";
  row("gaussian_interval", gaussian_interval_bound(n, s), "P{xi in I}, |I| = s");
  row("gaussian_trace", gaussian_trace_bound(n, s), "P{tr P_I >= 1}, |cube| = n");
  row("lemma_prob_x", lemma_prob_x_bound(n, delta, ell), "P{|X(Y)| <= delta}");
  row("lemma_densities", lemma_densities_bound(n, delta, 1.0 / ell),
      "P{|X(Y)| <= r}, r = delta, uniform rho_bar = 1/ell");
  row("thm_prob_nu", thm_prob_nu_bound(n, delta, ell), "P{nu_N(s) >= s/delta}");
  row("thm_prob_nu_jl", thm_prob_nu_jl_bound(n, delta, ell), "P{nu_N(s) >= s/delta}");
  const RcmParameters p = rcm_uniform_params(ell, alpha);
  row("rcm tail", rcm_tail_bound(p, n, s), "C''|Q|^{A''} s^{B''}, |Q| = n");
  row("rcm threshold", rcm_threshold(p, n, s), "C'|Q|^{A'} s^{B'}");
  snprintf(line, sizeof line,
           "  rcm params             C'=%g A'=%g B'=%g C''=%g A''=%g B''=%g\n", p.c_prime,
           p.a_prime, p.b_prime, p.c_double, p.a_double, p.b_double);
  os << line;
  return os.str();
}

}  // namespace fluctlab
