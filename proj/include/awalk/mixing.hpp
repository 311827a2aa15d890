#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "awalk/walk.hpp"

namespace awalk {

// Mixing conventions (explicit in every report): t_mix(eps, q) is the
// smallest n with (1/2)||mu_n mod q - u_q|| <= eps, i.e. the half-normalized
// TV whose maximum is 1. `normalized` = t_mix * H / log q with natural logs
// (base-free; ~1 at the cutoff); t_over_log2_q is the base-2 column matching
// the published constants.

struct MixingRecord {
  long long q = 0;
  bool is_prime = false;
  double log2_q = 0.0;
  int t_mix = -1;  // -1: not mixed within n_max
  double normalized = 0.0;
  double t_over_log2_q = 0.0;
  std::vector<std::pair<int, double>> tv_samples;  // (n, half TV), optional
};

// Full TV curve for one modulus; requires gcd(q, a) = 1 (the half-TV to
// uniform is then non-increasing in n, asserted as it is recorded).
MixingRecord tv_curve(const WalkParams& p, long long q, int n_max, double eps,
                      bool keep_samples = true, bool stop_at_mix = false);

struct LowerBoundCheck {
  long long q = 0;
  double delta = 0.0;
  int n_checked = 0;
  double half_tv = 0.0;
  double support_floor = 0.0;  // counting bound 1 - |supp mu_n| / q when positive
  bool violation = false;      // half_tv < 0.9 with log2 q >= 20
};
// Evaluates the TV at n = floor((1 - delta) log q / H_ref), the last step
// the entropy argument says the walk cannot yet be mixed.
LowerBoundCheck lower_bound_check(const WalkParams& p, long long q, double delta, double h_ref);

enum class ModulusFilter { Odd, Prime, CoprimeToA, Stride };

struct ScanConfig {
  long long q_min = 3;
  long long q_max = 101;
  double eps = 0.25;
  ModulusFilter filter = ModulusFilter::Odd;
  long long stride = 2;        // used by ModulusFilter::Stride
  long long max_moduli = 0;    // 0: all admissible; else evenly subsample to this count
  int n_max = 0;               // 0: automatic (4 log2 q + 64)
  double h_ref = 0.0;          // entropy rate in nats (required)
  int workers = 1;
};

struct MixingAggregates {
  std::size_t count = 0;
  std::size_t unmixed = 0;
  double median_normalized = 0.0;
  double q10_normalized = 0.0;
  double q90_normalized = 0.0;
  double min_normalized = 0.0;
  double median_t_over_log2_q = 0.0;
  double min_t_over_log2_q = 0.0;
};

struct MixingReport {
  ScanConfig config;
  std::vector<MixingRecord> records;  // ordered by q
  MixingAggregates aggregates;
  std::vector<std::string> errors;  // per-q failures, recorded not fatal
};

MixingReport mixing_scan(const WalkParams& p, const ScanConfig& cfg);

// q = a^k - 1 family versus a random coprime sample at matching size.
struct ExceptionalFamilyRow {
  int k = 0;
  long long q = 0;
  int t_mix = -1;
  double t_over_log2_q = 0.0;
  double random_median = 0.0;    // median t/log2 q over the comparison sample
  double excess_ratio = 0.0;
};
struct ExceptionalFamilyReport {
  double eps = 0.0;
  int comparison_samples = 0;
  std::vector<ExceptionalFamilyRow> rows;
};
ExceptionalFamilyReport exceptional_family_scan(const WalkParams& p, int k_min, int k_max,
                                                double eps, int comparison_samples,
                                                std::uint64_t seed, int workers = 1);

// Weighted density of primes that have not mixed by step n: sums (log p)/p
// over primes p <= p_max with log p <= (1/2 - eps) H n and half-TV >= eps,
// next to the Mertens total over all scanned primes. With `certify` set,
// primes whose l2 certificate already proves half-TV < eps skip the exact
// evolution; flagged primes always get the exact TV.
struct PrimeDensityReport {
  int n = 0;
  double eps = 0.0;
  long long p_max = 0;
  double log_p_cutoff = 0.0;
  std::size_t primes_scanned = 0;
  std::size_t primes_exceptional = 0;
  double exceptional_sum = 0.0;
  double mertens_total = 0.0;
  double ratio = 0.0;
  std::vector<long long> exceptional_primes;
};
PrimeDensityReport exceptional_prime_density(const WalkParams& p, int n, double eps,
                                             long long p_max, double h_ref, int workers = 1,
                                             bool certify = true);

}  // namespace awalk
