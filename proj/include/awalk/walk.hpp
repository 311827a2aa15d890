#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "awalk/errors.hpp"
#include "awalk/lattice_measure.hpp"
#include "awalk/rng.hpp"
#include "awalk/step_law.hpp"

namespace awalk {

using BigInt = boost::multiprecision::cpp_int;

struct WalkParams {
  long long a;
  StepLaw step;

  WalkParams(long long a_, StepLaw step_) : a(a_), step(std::move(step_)) {
    if (a < 2) throw std::invalid_argument("WalkParams: multiplier a must be >= 2");
  }
};

// Default site budget for exact evolution: ~2^27 doubles (~1 GiB), which for
// a = 2 and steps in {-1,0,1} corresponds to the n = 26 cap.
inline constexpr long long kDefaultMaxSites = 1LL << 27;

// Number of dense sites the law of sum b_i a^i occupies after n steps.
long long exact_support_sites(const WalkParams& p, int n);

// Exact law of X_n = sum_{i<n} b_i a^i by repeated convolve/pushforward.
template <typename Scalar = double>
LatticeMeasure<Scalar> evolve_exact(const WalkParams& p, int n, long long max_sites = kDefaultMaxSites);

// Law of X_n mod q via the forward push next(ax + b) += mu(b) cur(x).
// Works for any q >= 1; gcd(a, q) = 1 is a mixing-theory concern, not an
// evolution one.
class ModEvolver {
 public:
  ModEvolver(const WalkParams& p, long long q);

  void step();
  int steps_done() const { return n_; }
  long long modulus() const { return q_; }
  const Eigen::ArrayXd& mass() const { return cur_; }

  double half_tv_to_uniform() const;
  CyclicDistribution distribution() const;

 private:
  long long q_;
  int n_ = 0;
  std::vector<long long> offsets_mod_;  // step offsets reduced mod q
  std::vector<double> probs_;
  std::vector<long long> amap_;  // x -> a*x mod q
  Eigen::ArrayXd cur_, next_;
};

CyclicDistribution evolve_mod(const WalkParams& p, long long q, int n);

// mu_n({x}) by the carry dynamic program over base-a digits of x; O(n) per
// query with carry range [-B, B], B = ceil(max|b| / (a-1)). Exact to double
// precision arbitrarily far beyond the dense-evolution cap.
double point_mass(const WalkParams& p, int n, const BigInt& x);
double point_mass(const WalkParams& p, int n, long long x);

// Endpoint sum_{i<n} b_i a^i with b_i drawn i.i.d. from the step law using
// the given stream. Deterministic in (stream, n); consumes exactly n draws.
BigInt sample_endpoint(const WalkParams& p, int n, SplitMix64& stream);

// ---- template implementation ----------------------------------------------

template <typename Scalar>
LatticeMeasure<Scalar> evolve_exact(const WalkParams& p, int n, long long max_sites) {
  if (n < 0) throw std::invalid_argument("evolve_exact: n must be >= 0");
  if (exact_support_sites(p, n) > max_sites)
    throw CapExceeded("evolve_exact: support would exceed the configured site cap");

  using Array = typename LatticeMeasure<Scalar>::Array;
  const StepLaw& s = p.step;
  const long long span = s.max_offset() - s.min_offset();

  LatticeMeasure<Scalar> cur = LatticeMeasure<Scalar>::delta(0);
  for (int k = 0; k < n; ++k) {
    const auto& cm = cur.mass_array();
    const Eigen::Index len = cm.size();
    Array out(p.a * (len - 1) + span + 1);
    out.setZero();
    for (std::size_t j = 0; j < s.size(); ++j) {
      Scalar w;
      if constexpr (std::is_same_v<Scalar, double>)
        w = s.prob(j);
      else
        w = Scalar(s.weight(j), s.total());
      const Eigen::Index shift = s.offset(j) - s.min_offset();
      for (Eigen::Index i = 0; i < len; ++i) out[p.a * i + shift] += w * cm[i];
    }
    cur = LatticeMeasure<Scalar>(p.a * cur.origin() + s.min_offset(), std::move(out));
  }
  return cur;
}

}  // namespace awalk
