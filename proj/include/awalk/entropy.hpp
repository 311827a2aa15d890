#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "awalk/lattice_measure.hpp"
#include "awalk/walk.hpp"

namespace awalk {

// Three estimator families for the entropy rate H(a, mu) = lim H(mu_n)/n,
// plus concentration diagnostics for Z = log mu_n({X_n}).

struct EntropyEstimate {
  enum class Method { ExactIncrement, Cesaro, SmbMonteCarlo, ClosedForm };

  double value = 0.0;           // nats per step
  double standard_error = 0.0;  // heuristic width for exact methods, SE of mean for MC
  Method method = Method::ExactIncrement;
  int n_used = 0;
  std::int64_t samples = 0;  // 0 for exact methods

  double value_bits() const { return value / std::log(2.0); }
  double standard_error_bits() const { return standard_error / std::log(2.0); }
  std::string method_name() const;
};

// H(mu_n) in nats for n = 0..n_max, exact via dense evolution.
std::vector<double> entropy_curve(const WalkParams& p, int n_max,
                                  long long max_sites = kDefaultMaxSites);

struct RateEstimates {
  EntropyEstimate increment;  // H(mu_n) - H(mu_{n-1})
  EntropyEstimate cesaro;     // H(mu_n) / n
};
// Both exact estimates at n_max; widths are last-difference heuristics and
// are labeled as such in reports (the spec-level convergence rate is open).
RateEstimates rate_exact(const WalkParams& p, int n_max, long long max_sites = kDefaultMaxSites);

// Monte Carlo estimate of H(mu_n)/n from endpoint samples: draws X_n,
// evaluates Z = log mu_n({X_n}) by the carry DP, returns mean of -Z/n and
// the standard error of that mean. Usable for n in the hundreds.
EntropyEstimate smb_estimate(const WalkParams& p, int n, std::int64_t samples, std::uint64_t seed,
                             int workers = 1);

// Exact tail mass mu_n({x : |-log mu_n({x}) - H(mu_n)| >= alpha n}).
double smb_tail(const WalkParams& p, int n, double alpha, long long max_sites = kDefaultMaxSites);

// Exact Var[Z] = sum_x mu_n(x) (log mu_n(x) + H(mu_n))^2.
double efron_stein_variance(const WalkParams& p, int n, long long max_sites = kDefaultMaxSites);

// One incremental pass: per-n entropy, Var[Z] and tail masses for each alpha.
struct ConcentrationRow {
  int n = 0;
  double entropy_nats = 0.0;
  double var_z = 0.0;
  std::vector<double> tail_mass;  // aligned with the alphas argument
};
std::vector<ConcentrationRow> concentration_profile(const WalkParams& p, int n_max,
                                                    const std::vector<double>& alphas,
                                                    long long max_sites = kDefaultMaxSites);

// Conditional measure on the typical set S = {x : |-log mu_n(x) - H| <= alpha n}.
struct TypicalSetMeasure {
  int n = 0;
  double alpha = 0.0;
  LatticeMeasure<double> measure;  // nu_n
  double discarded_mass = 0.0;     // mu_n(S^c)
  // diagnostics, exact from the same pass
  double entropy_mu_n = 0.0;
  double min_atom = 0.0;
  double max_atom = 0.0;
  double support_bound = 0.0;  // exp(H + alpha n) / (1 - discarded)
};
TypicalSetMeasure truncate_typical(const WalkParams& p, int n, double alpha,
                                   long long max_sites = kDefaultMaxSites);

}  // namespace awalk
