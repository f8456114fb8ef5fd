#include "fluctlab/anderson.hpp"

#include <algorithm>
#include <cmath>

#include "fluctlab/bounds.hpp"
#include "fluctlab/decomposition.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/parallel.hpp"

namespace fluctlab {

long LatticeCube::sites() const {
  if (dim < 1 || side < 1) throw Error("dimension-error", "cube needs dim >= 1, side >= 1");
  long count = 1;
  for (int k = 0; k < dim; ++k) {
    count *= side;
    if (count > 4096) throw Error("dimension-error", "cube exceeds the 4096-site desk scale");
  }
  return count;
}

SymMatrix SymMatrix::zero(long n) {
  SymMatrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n * n), 0.0);
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

LatticeHamiltonian build_hamiltonian(const LatticeCube& cube, const SampleVector& potential) {
  const long n = cube.sites();
  if (static_cast<long>(potential.values.size()) != n)
    throw Error("dimension-error", "potential length must equal the site count");

  LatticeHamiltonian h;
  h.cube = cube;
  h.potential = potential;
  h.matrix = SymMatrix::zero(n);

  std::vector<int> coord(static_cast<std::size_t>(cube.dim), 0);
  for (long site = 0; site < n; ++site) {
    h.matrix.at(site, site) = 2.0 * cube.dim + potential.values[static_cast<std::size_t>(site)];
    // decode row-major coordinates of this site
    long rem = site;
    for (int k = cube.dim - 1; k >= 0; --k) {
      coord[static_cast<std::size_t>(k)] = static_cast<int>(rem % cube.side);
      rem /= cube.side;
    }
    long stride = 1;
    for (int k = cube.dim - 1; k >= 0; --k) {
      if (coord[static_cast<std::size_t>(k)] + 1 < cube.side) {
        h.matrix.at(site, site + stride) = -1.0;
        h.matrix.at(site + stride, site) = -1.0;
      }
      stride *= cube.side;
    }
  }
  return h;
}

std::vector<double> jacobi_eigenvalues(SymMatrix m) {
  const long n = m.n;
  if (n < 1 || n > 4096) throw Error("dimension-error", "eigensolver handles 1 <= n <= 4096");
  const double threshold = 1e-12 * m.frobenius();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (long p = 0; p < n; ++p)
      for (long q = p + 1; q < n; ++q) off = std::max(off, std::abs(m.at(p, q)));
    if (off <= threshold) {
      std::vector<double> ev(static_cast<std::size_t>(n));
      for (long i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = m.at(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (long p = 0; p < n; ++p) {
      for (long q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) <= threshold) continue;
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (long k = 0; k < n; ++k) {
          const double akp = m.at(k, p);
          const double akq = m.at(k, q);
          m.at(k, p) = c * akp - s * akq;
          m.at(k, q) = s * akp + c * akq;
        }
        for (long k = 0; k < n; ++k) {
          const double apk = m.at(p, k);
          const double aqk = m.at(q, k);
          m.at(p, k) = c * apk - s * aqk;
          m.at(q, k) = s * apk + c * aqk;
        }
        m.at(p, q) = 0.0;
        m.at(q, p) = 0.0;
      }
    }
  }
  throw Error("solver-failure", "Jacobi did not converge within 100 sweeps");
}

SpectralDecomposition eigen_decompose(const LatticeHamiltonian& h) {
  SpectralDecomposition sd;
  sd.eigenvalues = jacobi_eigenvalues(h.matrix);
  double sum = 0.0;
  for (double v : h.potential.values) sum += v;
  sd.xi = sum / static_cast<double>(h.potential.values.size());
  sd.shifted.resize(sd.eigenvalues.size());
  for (std::size_t j = 0; j < sd.eigenvalues.size(); ++j)
    sd.shifted[j] = sd.eigenvalues[j] - sd.xi;
  return sd;
}

long trace_projection(const SpectralDecomposition& sd, double t, double s) {
  if (s < 0) throw Error("out-of-range", "interval length must be nonnegative");
  long count = 0;
  for (double lambda : sd.eigenvalues)
    if (lambda >= t && lambda <= t + s) ++count;
  return count;
}

ShiftIdentityReport verify_shift_identity(const LatticeCube& cube, const MarginalSpec& spec,
                                          std::int64_t trials, std::uint64_t seed, int workers) {
  const long n = cube.sites();
  struct Record {
    double shift_dev = 0.0;
    double drift = 0.0;
    double eig_shift_err = 0.0;
  };
  std::vector<Record> rec(static_cast<std::size_t>(trials));

  for_each_trial(trials, workers, [&](std::int64_t t) {
    RngStream stream(seed, static_cast<std::uint64_t>(t));
    const SampleVector v = sample(spec, n, stream);
    const LatticeHamiltonian h = build_hamiltonian(cube, v);
    const double fro = h.matrix.frobenius();
    const std::vector<double> lambda = jacobi_eigenvalues(h.matrix);
    const FluctuationFrame frame = decompose(v);

    // A = H - xi*I, diagonalized independently
    SymMatrix a = h.matrix;
    for (long i = 0; i < n; ++i) a.at(i, i) -= frame.xi;
    const std::vector<double> mu = jacobi_eigenvalues(a);

    Record& r = rec[static_cast<std::size_t>(t)];
    for (std::size_t j = 0; j < lambda.size(); ++j)
      r.shift_dev = std::max(r.shift_dev,
                             std::abs(lambda[j] - (frame.xi + mu[j])) / (fro > 0 ? fro : 1.0));

    // shifting every potential value by a constant must leave A untouched
    const double c = 0.75;
    SampleVector vs = v;
    for (double& x : vs.values) x += c;
    const LatticeHamiltonian hs = build_hamiltonian(cube, vs);
    const FluctuationFrame fs = decompose(vs);
    SymMatrix as = hs.matrix;
    for (long i = 0; i < n; ++i) as.at(i, i) -= fs.xi;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        r.drift = std::max(r.drift, std::abs(as.at(i, j) - a.at(i, j)));

    const std::vector<double> lambda_s = jacobi_eigenvalues(hs.matrix);
    for (std::size_t j = 0; j < lambda.size(); ++j)
      r.eig_shift_err = std::max(
          r.eig_shift_err, std::abs(lambda_s[j] - lambda[j] - c) / (fro > 0 ? fro : 1.0));
  });

  ShiftIdentityReport rep;
  rep.trials = trials;
  for (const Record& r : rec) {
    rep.max_shift_deviation = std::max(rep.max_shift_deviation, r.shift_dev);
    rep.max_translation_drift = std::max(rep.max_translation_drift, r.drift);
    rep.max_eigenvalue_shift_error = std::max(rep.max_eigenvalue_shift_error, r.eig_shift_err);
  }
  return rep;
}

namespace {

struct SweepRecords {
  std::vector<std::vector<double>> spectra;
  std::vector<double> clamped_trace_modulus;  // min(1, |cube| * nu_N(s)), uniform only
};

SweepRecords run_trials(const LatticeCube& cube, const MarginalSpec& spec, double s,
                        std::int64_t trials, std::uint64_t seed, int workers,
                        bool modulus_form) {
  const long n = cube.sites();
  SweepRecords out;
  out.spectra.resize(static_cast<std::size_t>(trials));
  if (modulus_form) out.clamped_trace_modulus.resize(static_cast<std::size_t>(trials), 0.0);
  for_each_trial(trials, workers, [&](std::int64_t t) {
    RngStream stream(seed, static_cast<std::uint64_t>(t));
    const SampleVector v = sample(spec, n, stream);
    const LatticeHamiltonian h = build_hamiltonian(cube, v);
    out.spectra[static_cast<std::size_t>(t)] = jacobi_eigenvalues(h.matrix);
    if (modulus_form) {
      const double nu = modulus(fiber(v), s);
      out.clamped_trace_modulus[static_cast<std::size_t>(t)] =
          std::min(1.0, static_cast<double>(n) * nu);
    }
  });
  return out;
}

WegnerResult evaluate_interval(const SweepRecords& rec, const LatticeCube& cube,
                               const MarginalSpec& spec, double t, double s) {
  std::int64_t hits = 0;
  for (const auto& ev : rec.spectra) {
    bool in = false;
    for (double lambda : ev)
      if (lambda >= t && lambda <= t + s) {
        in = true;
        break;
      }
    hits += in ? 1 : 0;
  }
  WegnerResult r;
  r.t = t;
  r.s = s;
  r.estimate = make_tail_estimate(hits, static_cast<std::int64_t>(rec.spectra.size()));
  if (spec.kind == MarginalKind::gaussian) {
    r.bound = gaussian_trace_bound(cube.sites(), s);
    r.modulus_form = false;
  } else {
    double sum = 0.0;
    for (double m : rec.clamped_trace_modulus) sum += m;
    r.bound = sum / static_cast<double>(rec.clamped_trace_modulus.size());
    r.modulus_form = true;
  }
  return r;
}

}  // namespace

WegnerResult wegner_experiment(const LatticeCube& cube, const MarginalSpec& spec, double t,
                               double s, std::int64_t trials, std::uint64_t seed, int workers) {
  if (!(s > 0)) throw Error("out-of-range", "interval length must be positive");
  if (spec.kind == MarginalKind::smooth)
    throw Error("invalid-marginal", "Wegner runs support gaussian or uniform potentials");
  const SweepRecords rec =
      run_trials(cube, spec, s, trials, seed, workers, spec.kind != MarginalKind::gaussian);
  return evaluate_interval(rec, cube, spec, t, s);
}

std::vector<WegnerResult> wegner_sweep(const LatticeCube& cube, const MarginalSpec& spec,
                                       double t0, double t1, double len, std::int64_t trials,
                                       std::uint64_t seed, int workers) {
  if (!(len > 0) || !(t1 > t0)) throw Error("out-of-range", "need t1 > t0 and len > 0");
  if (spec.kind == MarginalKind::smooth)
    throw Error("invalid-marginal", "Wegner runs support gaussian or uniform potentials");
  const SweepRecords rec =
      run_trials(cube, spec, len, trials, seed, workers, spec.kind != MarginalKind::gaussian);
  std::vector<WegnerResult> out;
  const auto intervals = static_cast<long>(std::floor((t1 - t0) / len + 1e-9));
  for (long k = 0; k < intervals; ++k)
    out.push_back(evaluate_interval(rec, cube, spec, t0 + static_cast<double>(k) * len, len));
  return out;
}

}  // namespace fluctlab
