#include "awalk/walk.hpp"

#include <cassert>
#include <cmath>

#include "awalk/kahan.hpp"

namespace awalk {

long long exact_support_sites(const WalkParams& p, int n) {
  // span of sum_{i<n} b_i a^i is (max-min) * (a^n - 1)/(a - 1)
  const long long span = p.step.max_offset() - p.step.min_offset();
  __int128 geo = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    geo += pw;
    pw *= p.a;
    if (geo > (static_cast<__int128>(1) << 62)) return 1LL << 62;
  }
  __int128 sites = static_cast<__int128>(span) * geo + 1;
  return sites > (static_cast<__int128>(1) << 62) ? (1LL << 62) : static_cast<long long>(sites);
}

ModEvolver::ModEvolver(const WalkParams& p, long long q) : q_(q) {
  if (q < 1) throw std::invalid_argument("ModEvolver: modulus must be >= 1");
  const StepLaw& s = p.step;
  for (std::size_t j = 0; j < s.size(); ++j) {
    offsets_mod_.push_back(((s.offset(j) % q) + q) % q);
    probs_.push_back(s.prob(j));
  }
  amap_.resize(q);
  long long r = 0;
  const long long am = ((p.a % q) + q) % q;
  for (long long x = 0; x < q; ++x) {
    amap_[x] = r;
    r += am;
    if (r >= q) r -= q;
  }
  cur_ = Eigen::ArrayXd::Zero(q);
  next_ = Eigen::ArrayXd::Zero(q);
  cur_[0] = 1.0;
}

void ModEvolver::step() {
  next_.setZero();
  for (std::size_t j = 0; j < offsets_mod_.size(); ++j) {
    const double w = probs_[j];
    const long long off = offsets_mod_[j];
    for (long long x = 0; x < q_; ++x) {
      long long y = amap_[x] + off;
      if (y >= q_) y -= q_;
      next_[y] += w * cur_[x];
    }
  }
  cur_.swap(next_);
  ++n_;
}

double ModEvolver::half_tv_to_uniform() const {
  KahanSum s;
  const double u = 1.0 / static_cast<double>(q_);
  for (long long x = 0; x < q_; ++x) s += std::abs(cur_[x] - u);
  return 0.5 * s.value();
}

CyclicDistribution ModEvolver::distribution() const { return CyclicDistribution(q_, cur_); }

CyclicDistribution evolve_mod(const WalkParams& p, long long q, int n) {
  if (n < 0) throw std::invalid_argument("evolve_mod: n must be >= 0");
  ModEvolver ev(p, q);
  for (int k = 0; k < n; ++k) ev.step();
  return ev.distribution();
}

namespace {

// Carry bound B = ceil(max|b| / (a-1)); any reachable carry stays in [-B, B].
long long carry_bound(const WalkParams& p) {
  const long long mb = p.step.max_abs_offset();
  return (mb + p.a - 2) / (p.a - 1);
}

}  // namespace

double point_mass(const WalkParams& p, int n, const BigInt& x) {
  if (n < 0) throw std::invalid_argument("point_mass: n must be >= 0");
  const StepLaw& s = p.step;
  const long long B = carry_bound(p);
  const std::size_t states = static_cast<std::size_t>(2 * B + 1);

  std::vector<double> cur(states, 0.0), nxt(states);
  cur[B] = 1.0;  // carry 0

  BigInt rem = x;
  const long long a = p.a;
  for (int i = 0; i < n; ++i) {
    // Euclidean digit: d in [0, a), rem <- (rem - d) / a
    long long d = (rem % a).convert_to<long long>();
    if (d < 0) d += a;
    rem = (rem - d) / a;

    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (std::size_t ci = 0; ci < states; ++ci) {
      if (cur[ci] == 0.0) continue;
      const long long c = static_cast<long long>(ci) - B;
      for (std::size_t j = 0; j < s.size(); ++j) {
        const long long t = c + s.offset(j) - d;
        if (t % a != 0) continue;
        const long long c2 = t / a;
        assert(c2 >= -B && c2 <= B);
        nxt[c2 + B] += s.prob(j) * cur[ci];
      }
    }
    cur.swap(nxt);
  }

  // The remaining carry must absorb what is left of x exactly.
  if (rem > B || rem < -B) return 0.0;
  return cur[rem.convert_to<long long>() + B];
}

double point_mass(const WalkParams& p, int n, long long x) { return point_mass(p, n, BigInt(x)); }

BigInt sample_endpoint(const WalkParams& p, int n, SplitMix64& stream) {
  const StepLaw& s = p.step;
  const auto total = static_cast<std::uint64_t>(s.total());
  BigInt x = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    std::uint64_t u = stream.next_below(total);
    std::size_t j = 0;
    while (u >= static_cast<std::uint64_t>(s.weight(j))) {
      u -= static_cast<std::uint64_t>(s.weight(j));
      ++j;
    }
    x += pw * s.offset(j);
    pw *= p.a;
  }
  return x;
}

}  // namespace awalk
