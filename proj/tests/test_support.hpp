#pragma once

#include <vector>

#include "awalk/kahan.hpp"
#include "awalk/lattice_measure.hpp"
#include "awalk/rng.hpp"
#include "awalk/step_law.hpp"
#include "awalk/walk.hpp"

namespace awalk::testsupport {

inline StepLaw model_step() { return StepLaw::uniform({-1, 0, 1}); }
inline WalkParams model_params() { return WalkParams(2, model_step()); }

// Random probability measure with `atoms` sites scattered in [-span, span].
inline LatticeMeasure<double> random_measure(SplitMix64& rng, long long span, int atoms) {
  Eigen::ArrayXd mass = Eigen::ArrayXd::Zero(2 * span + 1);
  for (int i = 0; i < atoms; ++i)
    mass[rng.next_below(2 * span + 1)] += rng.next_double() + 1e-3;
  KahanSum total;
  for (Eigen::Index i = 0; i < mass.size(); ++i) total += mass[i];
  mass /= total.value();
  return LatticeMeasure<double>(-span, std::move(mass));
}

inline CyclicDistribution random_distribution(SplitMix64& rng, long long q) {
  Eigen::ArrayXd mass(q);
  KahanSum total;
  for (long long i = 0; i < q; ++i) {
    mass[i] = rng.next_double() + 1e-9;
    total += mass[i];
  }
  mass /= total.value();
  return CyclicDistribution(q, std::move(mass));
}

// Exact law of sum b_i a^i after n steps by literal trajectory enumeration;
// returns integer counts per endpoint (denominator total^n). Oracle-only:
// independent of the evolution code paths.
inline std::vector<std::pair<long long, long long>> enumerate_counts(const WalkParams& p, int n) {
  std::vector<std::pair<long long, long long>> counts;  // (site, count), built sparse
  const StepLaw& s = p.step;
  std::vector<std::size_t> odo(n, 0);
  std::vector<long long> endpoint_of;
  for (;;) {
    long long x = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
      x += s.offset(odo[i]) * pw;
      pw *= p.a;
    }
    long long w = 1;
    for (int i = 0; i < n; ++i) w *= s.weight(odo[i]);
    counts.emplace_back(x, w);
    int pos = 0;
    while (pos < n && ++odo[pos] == s.size()) odo[pos++] = 0;
    if (pos == n) break;
  }
  std::sort(counts.begin(), counts.end());
  std::vector<std::pair<long long, long long>> merged;
  for (auto& [x, w] : counts) {
    if (!merged.empty() && merged.back().first == x)
      merged.back().second += w;
    else
      merged.emplace_back(x, w);
  }
  return merged;
}

}  // namespace awalk::testsupport
