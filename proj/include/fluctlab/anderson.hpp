#pragma once

#include <cstdint>
#include <vector>

#include "fluctlab/distributions.hpp"
#include "fluctlab/montecarlo.hpp"

namespace fluctlab {

// Finite cube in Z^d with side L, sites enumerated in row-major order.
struct LatticeCube {
  int dim = 1;
  int side = 1;

  long sites() const;
};

// Dense symmetric matrix, row-major storage.
struct SymMatrix {
  long n = 0;
  std::vector<double> a;

  static SymMatrix zero(long n);
  double& at(long i, long j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(long i, long j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  double frobenius() const;
};

// H = -Laplacian + diag(V) with simple (Dirichlet) boundary: diagonal
// 2d + V(x), off-diagonal -1 between nearest neighbors inside the cube.
struct LatticeHamiltonian {
  LatticeCube cube;
  SampleVector potential;
  SymMatrix matrix;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> shifted;      // eigenvalues - xi_N, eigenvalues of H - xi_N*I
  double xi = 0.0;                  // sample mean of the potential
};

LatticeHamiltonian build_hamiltonian(const LatticeCube& cube, const SampleVector& potential);

// Cyclic Jacobi sweeps; converged when every off-diagonal magnitude drops
// below 1e-12 * ||A||_F, solver-failure after 100 sweeps.  Ascending output.
std::vector<double> jacobi_eigenvalues(SymMatrix m);

SpectralDecomposition eigen_decompose(const LatticeHamiltonian& h);

// Number of eigenvalues in the closed interval [t, t+s].
long trace_projection(const SpectralDecomposition& sd, double t, double s);

// Diagonalizes H and A = H - xi*I independently per trial and reports the
// worst relative mismatch of lambda_j vs xi + mu_j, plus the entrywise drift
// of A under a constant potential shift.
struct ShiftIdentityReport {
  std::int64_t trials = 0;
  double max_shift_deviation = 0.0;       // max_j |lambda_j - (xi + mu_j)| / ||H||_F
  double max_translation_drift = 0.0;     // max entrywise |A(V+c) - A(V)|
  double max_eigenvalue_shift_error = 0.0;  // eigenvalue response to V -> V+c vs c
};

ShiftIdentityReport verify_shift_identity(const LatticeCube& cube, const MarginalSpec& spec,
                                          std::int64_t trials, std::uint64_t seed,
                                          int workers = 1);

struct WegnerResult {
  double t = 0.0;
  double s = 0.0;
  TailEstimate estimate;      // frequency of {tr P_[t,t+s] >= 1}
  double bound = 0.0;         // gaussian: |cube|^{3/2}|I|/sqrt(2 pi);
                              // uniform: trial average of min(1, |cube|*nu_N(s))
  bool modulus_form = false;  // true when the bound came from the modulus
};

WegnerResult wegner_experiment(const LatticeCube& cube, const MarginalSpec& spec, double t,
                               double s, std::int64_t trials, std::uint64_t seed,
                               int workers = 1);

// Same trials evaluated against every interval [t0 + k*len, ...] tiling
// [t0, t1]; spectra are computed once per trial, which is equivalent to
// running wegner_experiment per interval with the same seed.
std::vector<WegnerResult> wegner_sweep(const LatticeCube& cube, const MarginalSpec& spec,
                                       double t0, double t1, double len, std::int64_t trials,
                                       std::uint64_t seed, int workers = 1);

}  // namespace fluctlab
