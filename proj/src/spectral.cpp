#include "awalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "awalk/errors.hpp"
#include "awalk/kahan.hpp"
#include "awalk/numtheory.hpp"
#include "awalk/rng.hpp"

namespace awalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cdouble cis(double ang) { return cdouble(std::cos(ang), std::sin(ang)); }

long long mod_ll(__int128 v, long long q) {
  long long r = static_cast<long long>(v % q);
  return r < 0 ? r + q : r;
}

// Table of muhat(j/q), j = 0..q-1, with angles reduced mod q exactly.
std::vector<cdouble> step_char_table(const StepLaw& s, long long q) {
  std::vector<cdouble> table(q, cdouble(0));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double w = s.prob(k);
    const long long off = s.offset(k);
    for (long long j = 0; j < q; ++j) {
      const long long oj = mod_ll(static_cast<__int128>(off) * j, q);
      table[j] += w * cis(-kTwoPi * static_cast<double>(oj) / static_cast<double>(q));
    }
  }
  return table;
}

long long checked_pow(long long a, int e) {
  __int128 p = 1;
  for (int i = 0; i < e; ++i) {
    p *= a;
    if (p > (static_cast<__int128>(1) << 62))
      throw CapExceeded("scale factor a^e exceeds 2^62");
  }
  return static_cast<long long>(p);
}

}  // namespace

cdouble step_char(const StepLaw& step, double xi) {
  cdouble acc(0);
  for (std::size_t k = 0; k < step.size(); ++k)
    acc += step.prob(k) * cis(-kTwoPi * xi * static_cast<double>(step.offset(k)));
  return acc;
}

cdouble step_char(const StepLaw& step, long long r, long long q) {
  cdouble acc(0);
  for (std::size_t k = 0; k < step.size(); ++k) {
    const long long rj = mod_ll(static_cast<__int128>(step.offset(k)) * r, q);
    acc += step.prob(k) * cis(-kTwoPi * static_cast<double>(rj) / static_cast<double>(q));
  }
  return acc;
}

cdouble walk_char(const WalkParams& p, int n, long long r, long long q) {
  if (q < 1) throw std::invalid_argument("walk_char: modulus must be >= 1");
  long long cur = ((r % q) + q) % q;
  const long long am = ((p.a % q) + q) % q;
  cdouble acc(1.0);
  for (int i = 0; i < n; ++i) {
    acc *= step_char(p.step, cur, q);
    cur = mod_ll(static_cast<__int128>(cur) * am, q);
  }
  return acc;
}

cdouble walk_char(const WalkParams& p, int n, double xi) {
  cdouble acc(1.0);
  double cur = xi - std::floor(xi);
  for (int i = 0; i < n; ++i) {
    acc *= step_char(p.step, cur);
    cur *= static_cast<double>(p.a);
    cur -= std::floor(cur);
  }
  return acc;
}

SpectrumSlice walk_spectrum(const WalkParams& p, long long q, int n) {
  if (q < 1) throw std::invalid_argument("walk_spectrum: modulus must be >= 1");
  const auto table = step_char_table(p.step, q);
  const long long am = ((p.a % q) + q) % q;
  Eigen::ArrayXcd amp(q);
  for (long long r = 0; r < q; ++r) {
    cdouble acc(1.0);
    long long cur = r;
    for (int i = 0; i < n; ++i) {
      acc *= table[cur];
      if (std::norm(acc) < 1e-300) {
        acc = cdouble(0);
        break;
      }
      cur = mod_ll(static_cast<__int128>(cur) * am, q);
    }
    amp[r] = acc;
  }
  return SpectrumSlice{q, std::move(amp)};
}

double l2_dist_sq_mod(const WalkParams& p, long long q, int n) {
  if (q < 2) throw std::invalid_argument("l2_dist_sq_mod: modulus must be >= 2");
  const auto table = step_char_table(p.step, q);
  std::vector<double> mag2(q);
  for (long long j = 0; j < q; ++j) mag2[j] = std::norm(table[j]);
  const long long am = ((p.a % q) + q) % q;
  KahanSum sum;
  for (long long r = 1; r < q; ++r) {
    double prod = 1.0;
    long long cur = r;
    for (int i = 0; i < n; ++i) {
      prod *= mag2[cur];
      if (prod < 1e-300) {
        prod = 0.0;
        break;
      }
      cur = mod_ll(static_cast<__int128>(cur) * am, q);
    }
    sum += prod;
  }
  return sum.value();
}

int digit_activity(std::span<const int> digits, long long a) {
  for (int d : digits)
    if (d < 0 || d >= a) throw std::invalid_argument("digit_activity: digit out of range");
  int count = 0;
  for (std::size_t i = 0; i + 1 < digits.size(); ++i) {
    const bool quiet = digits[i] == digits[i + 1] && (digits[i] == 0 || digits[i] == a - 1);
    if (!quiet) ++count;
  }
  return count;
}

double rho_off_zero(const StepLaw& step, long long a, double grid_step) {
  const double lo = 1.0 / (static_cast<double>(a) * static_cast<double>(a));
  const double hi = 0.5;
  if (lo >= hi) return 1.0;
  double best = 0.0;
  const long long steps = static_cast<long long>(std::ceil((hi - lo) / grid_step));
  for (long long i = 0; i <= steps; ++i) {
    const double xi = std::min(hi, lo + grid_step * static_cast<double>(i));
    best = std::max(best, std::abs(step_char(step, xi)));
  }
  // |muhat'| <= 2 pi E|b|; half-step Lipschitz slack certifies the grid max.
  const double slack = std::numbers::pi * step.mean_abs() * grid_step;
  return std::min(1.0, best + slack);
}

double small_moduli_bound(const WalkParams& p, long long q, int n, double rho) {
  if (std::gcd(p.a, q) != 1)
    throw std::invalid_argument("small_moduli_bound: requires gcd(q, a) = 1");
  const int n0 = ceil_log_base(static_cast<std::uint64_t>(p.a), static_cast<std::uint64_t>(q));
  const int k = n0 > 0 ? n / n0 : 0;
  const double a = static_cast<double>(p.a);
  const double rho2k = std::pow(rho * rho, k);
  return a * (std::pow(1.0 + a * rho2k, n0) - 1.0);
}

double small_moduli_bound(const WalkParams& p, long long q, int n) {
  return small_moduli_bound(p, q, n, rho_off_zero(p.step, p.a));
}

// ---- projections -----------------------------------------------------------

const Eigen::ArrayXd& ProjectionDecomposition::component(long long s) const {
  auto it = std::find(component_moduli.begin(), component_moduli.end(), s);
  if (it == component_moduli.end())
    throw std::invalid_argument("ProjectionDecomposition: no component for that modulus");
  return components[static_cast<std::size_t>(it - component_moduli.begin())];
}

ProjectionDecomposition project(const CyclicDistribution& nu, long long q0, long long max_q) {
  const long long q = nu.modulus();
  if (q > max_q) throw CapExceeded("project: modulus exceeds configured cap");
  if (q0 < 1 || q % q0 != 0) throw std::invalid_argument("project: q0 must divide q");

  ProjectionDecomposition dec;
  dec.q = q;
  dec.q0 = q0;
  for (std::uint64_t d : divisors(static_cast<std::uint64_t>(q / q0)))
    dec.component_moduli.push_back(q0 * static_cast<long long>(d));
  std::sort(dec.component_moduli.begin(), dec.component_moduli.end());
  dec.divisor_count_q_over_q0 = divisor_count(static_cast<std::uint64_t>(q / q0));
  for (std::uint64_t t : divisors(static_cast<std::uint64_t>(q / q0)))
    dec.mobius_table.emplace_back(static_cast<long long>(t), mobius(t));

  std::vector<cdouble> vec(q);
  for (long long x = 0; x < q; ++x) vec[x] = nu.mass_array()[x];
  const auto spec = dft(vec);

  // Bin t <-> fraction t/q = r/s in lowest terms; the component of that bin
  // is [s, q0].
  std::vector<std::vector<cdouble>> comp_spec(
      dec.component_moduli.size(), std::vector<cdouble>(q, cdouble(0)));
  for (long long t = 0; t < q; ++t) {
    const long long s = q / std::gcd(t, q);
    const long long owner = static_cast<long long>(
        lcm_u64(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(q0)));
    const auto it =
        std::lower_bound(dec.component_moduli.begin(), dec.component_moduli.end(), owner);
    comp_spec[static_cast<std::size_t>(it - dec.component_moduli.begin())][t] = spec[t];
  }

  dec.components.reserve(comp_spec.size());
  for (auto& cs : comp_spec) {
    const auto phys = dft(cs, /*inverse=*/true);
    Eigen::ArrayXd real(q);
    for (long long x = 0; x < q; ++x) real[x] = phys[x].real();
    dec.components.push_back(std::move(real));
  }
  return dec;
}

Eigen::ArrayXd reduce_vector_mod(const LatticeMeasure<double>& nu, long long q) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(q);
  const auto& mm = nu.mass_array();
  long long r = ((nu.origin() % q) + q) % q;
  for (Eigen::Index i = 0; i < mm.size(); ++i) {
    out[r] += mm[i];
    if (++r == q) r = 0;
  }
  return out;
}

Eigen::ArrayXd embed_uniform_fibres(const Eigen::ArrayXd& v_mod_q1, long long q) {
  const long long q1 = v_mod_q1.size();
  if (q % q1 != 0) throw std::invalid_argument("embed_uniform_fibres: q1 must divide q");
  const double fibre = static_cast<double>(q / q1);
  Eigen::ArrayXd out(q);
  for (long long x = 0; x < q; ++x) out[x] = v_mod_q1[x % q1] / fibre;
  return out;
}

// Mobius inversion of pi_q nu = sum_{q0 | s | q} P_s^{(q0)} nu over the
// divisor lattice between q0 and q gives weights mu(q / q1). (The weight is
// NOT mu(q1 / q0): that variant fails reconstruction already at q = 12,
// q0 = 1, where the top fraction would get weight mu(12) = 0.)
Eigen::ArrayXd projection_mobius(const LatticeMeasure<double>& nu, long long q, long long q0) {
  if (q0 < 1 || q % q0 != 0) throw std::invalid_argument("projection_mobius: q0 must divide q");
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(q);
  const std::uint64_t ratio = static_cast<std::uint64_t>(q / q0);
  for (std::uint64_t t : divisors(ratio)) {
    const int mu = mobius(ratio / t);
    if (mu == 0) continue;
    const long long q1 = q0 * static_cast<long long>(t);
    out += static_cast<double>(mu) * embed_uniform_fibres(reduce_vector_mod(nu, q1), q);
  }
  return out;
}

OperatorNormReport operator_norm_checks(long long q, long long q0, int trials, std::uint64_t seed) {
  if (q0 < 1 || q % q0 != 0) throw std::invalid_argument("operator_norm_checks: q0 must divide q");
  OperatorNormReport rep;
  rep.q = q;
  rep.q0 = q0;
  rep.trials = trials;
  rep.divisor_bound = divisor_count(static_cast<std::uint64_t>(q / q0));

  SplitMix64 rng(seed);
  const long long N = 2 * q;
  for (int t = 0; t < trials; ++t) {
    auto stream = rng.substream(static_cast<std::uint64_t>(t));
    Eigen::ArrayXd mass(2 * N + 1);
    KahanSum total;
    for (long long i = 0; i < 2 * N + 1; ++i) {
      mass[i] = -std::log(1.0 - stream.next_double());
      total += mass[i];
    }
    mass /= total.value();
    LatticeMeasure<double> nu(-N, std::move(mass));

    KahanSum pi_norm;
    for (double v : reduce_vector_mod(nu, q)) pi_norm += std::abs(v);
    rep.max_pi_ratio = std::max(rep.max_pi_ratio, pi_norm.value());

    KahanSum P_norm;
    for (double v : projection_mobius(nu, q, q0)) P_norm += std::abs(v);
    rep.max_P_ratio = std::max(rep.max_P_ratio, P_norm.value());
  }
  return rep;
}

// ---- large sieve -----------------------------------------------------------

LargeSieveReport large_sieve_sum(const LatticeMeasure<double>& nu, long long q0, long long Q) {
  if (q0 < 1) throw std::invalid_argument("large_sieve_sum: q0 must be >= 1");
  if (Q < 2 * q0) throw std::invalid_argument("large_sieve_sum: requires Q >= 2 q0");

  LargeSieveReport rep;
  rep.half_width = std::max(std::llabs(nu.min_site()), std::llabs(nu.max_site()));
  rep.l2_sq = l2_norm_sq(nu);
  rep.bound = (static_cast<double>(Q) * static_cast<double>(Q) +
               2.0 * static_cast<double>(rep.half_width)) *
              rep.l2_sq;

  KahanSum lhs;
  const long long q_lo = (Q + 1) / 2;
  long long q = ((q_lo + q0 - 1) / q0) * q0;
  for (; q <= Q; q += q0) {
    for (std::uint64_t s64 : divisors(static_cast<std::uint64_t>(q))) {
      const long long s = static_cast<long long>(s64);
      if (static_cast<long long>(lcm_u64(s64, static_cast<std::uint64_t>(q0))) != q) continue;
      const Eigen::ArrayXd folded = reduce_vector_mod(nu, s);
      std::vector<cdouble> vec(s);
      for (long long x = 0; x < s; ++x) vec[x] = folded[x];
      const auto spec = dft(vec);
      if (s == 1) {
        lhs += std::norm(spec[0]);
        ++rep.fraction_count;
        continue;
      }
      for (long long r = 1; r < s; ++r) {
        if (std::gcd(r, s) != 1) continue;
        lhs += std::norm(spec[r]);
        ++rep.fraction_count;
      }
    }
  }
  rep.lhs = lhs.value();
  return rep;
}

// ---- multiplicity averaging ------------------------------------------------

LatticeMeasure<double> multiplicity_average(const WalkParams& p, const LatticeMeasure<double>& nu,
                                            int n, int m, long long max_sites) {
  if (n < 0 || m < 0) throw std::invalid_argument("multiplicity_average: n, m must be >= 0");
  if (!nu.is_probability())
    throw std::invalid_argument("multiplicity_average: nu must be a probability measure");

  std::vector<LatticeMeasure<double>> mu(m + 1);
  for (int i = 0; i <= m; ++i) mu[i] = evolve_exact<double>(p, i, max_sites);

  // Accumulate the (m+1) convolution products over their union interval.
  long long lo = 0, hi = 0;
  std::vector<LatticeMeasure<double>> terms;
  terms.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    auto t = convolve(mu[i], pushforward_scale(nu, checked_pow(p.a, i)));
    t = convolve(t, pushforward_scale(mu[m - i], checked_pow(p.a, i + n)));
    if (t.size() > max_sites) throw CapExceeded("multiplicity_average: term exceeds site cap");
    lo = std::min(lo, t.min_site());
    hi = std::max(hi, t.max_site());
    terms.push_back(std::move(t));
  }
  if (hi - lo + 1 > max_sites) throw CapExceeded("multiplicity_average: result exceeds site cap");

  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(hi - lo + 1);
  const double w = 1.0 / static_cast<double>(m + 1);
  for (const auto& t : terms)
    acc.segment(t.min_site() - lo, t.size()) += w * t.mass_array();
  return LatticeMeasure<double>(lo, std::move(acc));
}

cdouble lattice_char(const LatticeMeasure<double>& m, long long r, long long q) {
  if (q < 1) throw std::invalid_argument("lattice_char: modulus must be >= 1");
  cdouble acc(0);
  const auto& mm = m.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i) {
    if (mm[i] == 0.0) continue;
    const long long x = m.origin() + i;
    const long long rx = mod_ll(static_cast<__int128>(r) * x, q);
    acc += mm[i] * cis(-kTwoPi * static_cast<double>(rx) / static_cast<double>(q));
  }
  return acc;
}

double multiplicity_cs_margin(const WalkParams& p, const LatticeMeasure<double>& averaged,
                              const LatticeMeasure<double>& nu, int n, int m, int trials,
                              std::uint64_t seed) {
  (void)n;
  SplitMix64 rng(seed);
  double worst = -1e300;
  for (int t = 0; t < trials; ++t) {
    const long long q = 2 + static_cast<long long>(rng.next_below(999'999));
    const long long r = 1 + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(q - 1)));
    const double lhs = std::norm(lattice_char(averaged, r, q));
    KahanSum rhs;
    long long cur = r;
    const long long am = ((p.a % q) + q) % q;
    for (int i = 0; i <= m; ++i) {
      rhs += std::norm(lattice_char(nu, cur, q));
      cur = mod_ll(static_cast<__int128>(cur) * am, q);
    }
    worst = std::max(worst, lhs - rhs.value() / static_cast<double>(m + 1));
  }
  return worst;
}

}  // namespace awalk
