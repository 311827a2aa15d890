#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "awalk/fft.hpp"
#include "awalk/lattice_measure.hpp"
#include "awalk/walk.hpp"

namespace awalk {

// Transform convention: muhat(xi) = sum_x mu({x}) e(-xi x), e(x) = e^{2 pi i x}.
// Rational frequencies r/q are carried as exact integer pairs throughout;
// a^i r mod q is computed modularly, so n-fold products suffer no frequency
// drift.

cdouble step_char(const StepLaw& step, double xi);
cdouble step_char(const StepLaw& step, long long r, long long q);

// muhat_n(xi) = prod_{i<n} muhat(a^i xi).
cdouble walk_char(const WalkParams& p, int n, long long r, long long q);
cdouble walk_char(const WalkParams& p, int n, double xi);

// Amplitudes muhat_n(r/q), r = 0..q-1 (the transform of mu_n mod q).
struct SpectrumSlice {
  long long q;
  Eigen::ArrayXcd amplitudes;
};
SpectrumSlice walk_spectrum(const WalkParams& p, long long q, int n);

// q ||mu_n mod q - u_q||_2^2 = sum_{r != 0} |muhat_n(r/q)|^2, in O(n q).
double l2_dist_sq_mod(const WalkParams& p, long long q, int n);

// A_n(xi): indices i in {1..n-1} (1-based digits) where the pair
// (xi_i, xi_{i+1}) is NOT a constant run of 0s or of (a-1)s.
int digit_activity(std::span<const int> digits, long long a);

// Certified sup of |muhat(xi)| over distance-to-0 >= 1/a^2 in R/Z, by grid
// search plus the Lipschitz bound |muhat'| <= 2 pi E|b|. The bound is
// inflated by the grid error, so it over-approximates the true sup.
double rho_off_zero(const StepLaw& step, long long a, double grid_step = 1e-6);

// Explicit l2 bound a ((1 + a rho^{2k})^{n0} - 1), n0 = ceil(log_a q),
// k = floor(n / n0); dominates l2_dist_sq_mod whenever k >= 1.
double small_moduli_bound(const WalkParams& p, long long q, int n);
double small_moduli_bound(const WalkParams& p, long long q, int n, double rho);

// ---- projection operators --------------------------------------------------

// Fourier-multiplier projections for q0 | q: pi_q keeps fractions r/s with
// s | q; P_q^{(q0)} keeps those with [s, q0] = q. Components of the
// decomposition partition the q frequency bins, so they sum back to nu mod q
// and have pairwise disjoint Fourier support.
struct ProjectionDecomposition {
  long long q = 0, q0 = 0;
  std::vector<long long> component_moduli;   // s with q0 | s | q, sorted
  std::vector<Eigen::ArrayXd> components;    // physical-space signed vectors
  std::uint64_t divisor_count_q_over_q0 = 0;
  std::vector<std::pair<long long, int>> mobius_table;  // t | q/q0 -> mu(t)

  const Eigen::ArrayXd& component(long long s) const;
};

ProjectionDecomposition project(const CyclicDistribution& nu, long long q0,
                                long long max_q = 1'000'000);

// Signed reduction / fibre-uniform embedding (the M(Z/q1) subspace of M(Z/q)).
Eigen::ArrayXd reduce_vector_mod(const LatticeMeasure<double>& nu, long long q);
Eigen::ArrayXd embed_uniform_fibres(const Eigen::ArrayXd& v_mod_q1, long long q);

// P_q^{(q0)} nu by the Mobius identity sum_{q0 | q1 | q} mu(q1/q0) pi_{q1} nu;
// an independent route from the Fourier-side `project`.
Eigen::ArrayXd projection_mobius(const LatticeMeasure<double>& nu, long long q, long long q0);

struct OperatorNormReport {
  long long q = 0, q0 = 0;
  int trials = 0;
  double max_pi_ratio = 0.0;  // ||pi_q nu||_1 / ||nu||_1, expected <= 1
  double max_P_ratio = 0.0;   // ||P_q^{(q0)} nu||_1 / ||nu||_1, expected <= d(q/q0)
  std::uint64_t divisor_bound = 0;
};
OperatorNormReport operator_norm_checks(long long q, long long q0, int trials, std::uint64_t seed);

// ---- large sieve -----------------------------------------------------------

// LHS = sum_{q in [Q/2, Q], q0 | q} q ||P_q^{(q0)} nu||_2^2, evaluated exactly
// over the Farey fractions r/s with s | q, [s, q0] = q, (r, s) = 1; reported
// next to the (Q^2 + 2N) ||nu||_2^2 comparison bound.
struct LargeSieveReport {
  double lhs = 0.0;
  double bound = 0.0;
  std::uint64_t fraction_count = 0;
  double l2_sq = 0.0;
  long long half_width = 0;  // N
};
LargeSieveReport large_sieve_sum(const LatticeMeasure<double>& nu, long long q0, long long Q);

// ---- Fourier multiplicity averaging ---------------------------------------

// nu^{(m)} = (1/(m+1)) sum_{i<=m} mu_i * (m_{a^i})_* nu * (m_{a^{i+n}})_* mu_{m-i}.
LatticeMeasure<double> multiplicity_average(const WalkParams& p, const LatticeMeasure<double>& nu,
                                            int n, int m, long long max_sites = kDefaultMaxSites);

// nuhat(r/q) for a lattice measure at an exact rational frequency.
cdouble lattice_char(const LatticeMeasure<double>& m, long long r, long long q);

// Max over random rational frequencies of |avg^(xi)|^2 - mean_i |nuhat(a^i xi)|^2;
// the Cauchy-Schwarz bound says this never exceeds 0 (up to roundoff).
double multiplicity_cs_margin(const WalkParams& p, const LatticeMeasure<double>& averaged,
                              const LatticeMeasure<double>& nu, int n, int m, int trials,
                              std::uint64_t seed);

}  // namespace awalk
