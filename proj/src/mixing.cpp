#include "awalk/mixing.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "awalk/kahan.hpp"
#include "awalk/numtheory.hpp"
#include "awalk/rng.hpp"
#include "awalk/spectral.hpp"

namespace awalk {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile_of(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double idx = p * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = idx - static_cast<double>(lo);
  return (1.0 - w) * v[lo] + w * v[hi];
}

int default_n_max(long long q) {
  return static_cast<int>(4.0 * std::log2(static_cast<double>(q))) + 64;
}

template <typename Fn>
void parallel_over(std::size_t count, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  auto drain = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
}

}  // namespace

MixingRecord tv_curve(const WalkParams& p, long long q, int n_max, double eps, bool keep_samples,
                      bool stop_at_mix) {
  if (q < 2) throw std::invalid_argument("tv_curve: modulus must be >= 2");
  if (std::gcd(p.a, q) != 1) throw std::invalid_argument("tv_curve: requires gcd(q, a) = 1");

  MixingRecord rec;
  rec.q = q;
  rec.is_prime = is_prime_u64(static_cast<std::uint64_t>(q));
  rec.log2_q = std::log2(static_cast<double>(q));

  ModEvolver ev(p, q);
  double prev = ev.half_tv_to_uniform();  // n = 0: 1 - 1/q
  if (keep_samples) rec.tv_samples.emplace_back(0, prev);
  for (int n = 1; n <= n_max; ++n) {
    ev.step();
    const double tv = ev.half_tv_to_uniform();
    assert(tv <= prev + 1e-12);  // TV to the invariant measure cannot increase
    prev = tv;
    if (keep_samples) rec.tv_samples.emplace_back(n, tv);
    if (rec.t_mix < 0 && tv <= eps) {
      rec.t_mix = n;
      if (stop_at_mix) break;
    }
  }
  if (rec.t_mix > 0) rec.t_over_log2_q = static_cast<double>(rec.t_mix) / rec.log2_q;
  return rec;
}

LowerBoundCheck lower_bound_check(const WalkParams& p, long long q, double delta, double h_ref) {
  if (h_ref <= 0) throw std::invalid_argument("lower_bound_check: H_ref must be > 0");
  if (delta < 0 || delta > 1) throw std::invalid_argument("lower_bound_check: delta in [0, 1]");
  LowerBoundCheck out;
  out.q = q;
  out.delta = delta;
  out.n_checked =
      static_cast<int>(std::floor((1.0 - delta) * std::log(static_cast<double>(q)) / h_ref));

  ModEvolver ev(p, q);
  for (int n = 0; n < out.n_checked; ++n) ev.step();
  out.half_tv = ev.half_tv_to_uniform();

  const double sites = static_cast<double>(exact_support_sites(p, out.n_checked));
  out.support_floor = std::max(0.0, 1.0 - sites / static_cast<double>(q));
  out.violation = out.half_tv < 0.9 && std::log2(static_cast<double>(q)) >= 20.0;
  return out;
}

MixingReport mixing_scan(const WalkParams& p, const ScanConfig& cfg) {
  if (cfg.h_ref <= 0) throw std::invalid_argument("mixing_scan: H_ref must be > 0");
  MixingReport rep;
  rep.config = cfg;

  std::vector<long long> moduli;
  const long long stride = cfg.filter == ModulusFilter::Stride ? std::max<long long>(1, cfg.stride) : 1;
  for (long long q = std::max<long long>(2, cfg.q_min); q <= cfg.q_max; q += stride) {
    if (std::gcd(p.a, q) != 1) continue;
    switch (cfg.filter) {
      case ModulusFilter::Odd:
        if (q % 2 == 0) continue;
        break;
      case ModulusFilter::Prime:
        if (!is_prime_u64(static_cast<std::uint64_t>(q))) continue;
        break;
      case ModulusFilter::CoprimeToA:
      case ModulusFilter::Stride:
        break;
    }
    moduli.push_back(q);
  }
  if (cfg.max_moduli > 0 && static_cast<long long>(moduli.size()) > cfg.max_moduli) {
    // Even subsample, deterministic, preserves coverage of the range.
    std::vector<long long> picked;
    picked.reserve(cfg.max_moduli);
    const double step = static_cast<double>(moduli.size()) / static_cast<double>(cfg.max_moduli);
    for (long long i = 0; i < cfg.max_moduli; ++i)
      picked.push_back(moduli[static_cast<std::size_t>(i * step)]);
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    moduli.swap(picked);
  }

  rep.records.resize(moduli.size());
  std::vector<std::string> errors(moduli.size());
  parallel_over(moduli.size(), cfg.workers, [&](std::size_t i) {
    const long long q = moduli[i];
    const int n_max = cfg.n_max > 0 ? cfg.n_max : default_n_max(q);
    try {
      MixingRecord rec = tv_curve(p, q, n_max, cfg.eps, /*keep_samples=*/false,
                                  /*stop_at_mix=*/true);
      if (rec.t_mix > 0)
        rec.normalized = static_cast<double>(rec.t_mix) * cfg.h_ref /
                         std::log(static_cast<double>(q));
      rep.records[i] = std::move(rec);
    } catch (const std::exception& e) {
      errors[i] = "q=" + std::to_string(q) + ": " + e.what();
      rep.records[i].q = q;
    }
  });
  for (auto& e : errors)
    if (!e.empty()) rep.errors.push_back(e);

  std::vector<double> norm, t_over;
  for (const auto& r : rep.records) {
    if (r.t_mix < 0) {
      ++rep.aggregates.unmixed;
      continue;
    }
    norm.push_back(r.normalized);
    t_over.push_back(r.t_over_log2_q);
  }
  rep.aggregates.count = rep.records.size();
  if (!norm.empty()) {
    rep.aggregates.median_normalized = median_of(norm);
    rep.aggregates.q10_normalized = quantile_of(norm, 0.10);
    rep.aggregates.q90_normalized = quantile_of(norm, 0.90);
    rep.aggregates.min_normalized = *std::min_element(norm.begin(), norm.end());
    rep.aggregates.median_t_over_log2_q = median_of(t_over);
    rep.aggregates.min_t_over_log2_q = *std::min_element(t_over.begin(), t_over.end());
  }
  return rep;
}

ExceptionalFamilyReport exceptional_family_scan(const WalkParams& p, int k_min, int k_max,
                                                double eps, int comparison_samples,
                                                std::uint64_t seed, int workers) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("exceptional_family_scan: bad k range");
  ExceptionalFamilyReport rep;
  rep.eps = eps;
  rep.comparison_samples = comparison_samples;
  rep.rows.resize(k_max - k_min + 1);

  SplitMix64 root(seed);
  // Flat task list: (k index, -1) for the family member, (k index, s) for
  // comparison sample s; medians are formed afterwards in fixed order.
  struct Task {
    int ki;
    int sample;  // -1: the a^k - 1 modulus itself
  };
  std::vector<Task> tasks;
  std::vector<std::vector<double>> comp(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    tasks.push_back({k - k_min, -1});
    for (int s = 0; s < comparison_samples; ++s) tasks.push_back({k - k_min, s});
    comp[k - k_min].assign(comparison_samples, 0.0);
  }

  parallel_over(tasks.size(), workers, [&](std::size_t ti) {
    const Task t = tasks[ti];
    const int k = k_min + t.ki;
    __int128 qe = 1;
    for (int i = 0; i < k; ++i) qe *= p.a;
    const long long q_family = static_cast<long long>(qe - 1);

    if (q_family < 2) {  // k = 1 with a = 2: the walk mod 1 is already uniform
      if (t.sample < 0) rep.rows[t.ki] = {k, q_family, 0, 0.0, 0.0, 0.0};
      else comp[t.ki][t.sample] = -1.0;
      return;
    }
    long long q = q_family;
    if (t.sample >= 0) {
      // Matching-size comparison modulus, coprime to a, from the seeded stream.
      auto stream = root.substream(static_cast<std::uint64_t>(t.ki) * 10007ull +
                                   static_cast<std::uint64_t>(t.sample));
      const long long lo = std::max<long long>(2, q_family - std::max<long long>(2, q_family / 8));
      const long long hi = q_family + std::max<long long>(2, q_family / 8);
      q = 0;
      for (int tries = 0; tries < 4096; ++tries) {
        const long long cand =
            lo + static_cast<long long>(stream.next_below(static_cast<std::uint64_t>(hi - lo + 1)));
        if (std::gcd(p.a, cand) == 1) {
          q = cand;
          break;
        }
      }
      if (q == 0) {  // no coprime modulus near this size
        comp[t.ki][t.sample] = -1.0;
        return;
      }
    }
    MixingRecord rec = tv_curve(p, q, default_n_max(q), eps, false, true);
    const double norm = rec.t_mix > 0 ? rec.t_over_log2_q : -1.0;
    if (t.sample < 0) {
      auto& row = rep.rows[t.ki];
      row.k = k;
      row.q = q_family;
      row.t_mix = rec.t_mix;
      row.t_over_log2_q = norm;
    } else {
      comp[t.ki][t.sample] = norm;
    }
  });

  for (auto& row : rep.rows) {
    auto& c = comp[&row - rep.rows.data()];
    c.erase(std::remove(c.begin(), c.end(), -1.0), c.end());
    row.random_median = median_of(c);
    row.excess_ratio = row.random_median > 0 ? row.t_over_log2_q / row.random_median : 0.0;
  }
  return rep;
}

PrimeDensityReport exceptional_prime_density(const WalkParams& p, int n, double eps,
                                             long long p_max, double h_ref, int workers,
                                             bool certify) {
  if (h_ref <= 0) throw std::invalid_argument("exceptional_prime_density: H_ref must be > 0");
  if (eps <= 0 || eps >= 0.5)
    throw std::invalid_argument("exceptional_prime_density: eps must lie in (0, 0.5)");
  PrimeDensityReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.p_max = p_max;
  rep.log_p_cutoff = (0.5 - eps) * h_ref * static_cast<double>(n);

  const double hard_cap = std::exp(std::min(rep.log_p_cutoff, std::log(static_cast<double>(p_max))));
  std::vector<std::uint64_t> primes;
  for (std::uint64_t pr : primes_up_to(static_cast<std::uint64_t>(hard_cap))) {
    // p | a never equidistributes (x -> ax is not invertible mod p); the
    // theorem absorbs those finitely many primes in its O(1) term, and we
    // keep them out of the density ratio.
    if (std::gcd(pr, static_cast<std::uint64_t>(p.a)) == 1) primes.push_back(pr);
  }

  const double rho = rho_off_zero(p.step, p.a);
  std::vector<std::uint8_t> exceptional(primes.size(), 0);
  parallel_over(primes.size(), workers, [&](std::size_t i) {
    const long long q = static_cast<long long>(primes[i]);
    if (certify) {
      // Cauchy-Schwarz certificate: (half TV)^2 <= (1/4) q ||.||_2^2.
      const double cert = 0.25 * small_moduli_bound(p, q, n, rho);
      if (cert < eps * eps) return;  // provably mixed
    }
    ModEvolver ev(p, q);
    for (int s = 0; s < n; ++s) ev.step();
    if (ev.half_tv_to_uniform() >= eps) exceptional[i] = 1;
  });

  KahanSum exc_sum, mertens;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const double lp = std::log(static_cast<double>(primes[i]));
    const double w = lp / static_cast<double>(primes[i]);
    mertens += w;
    if (exceptional[i]) {
      exc_sum += w;
      rep.exceptional_primes.push_back(static_cast<long long>(primes[i]));
    }
  }
  rep.primes_scanned = primes.size();
  rep.primes_exceptional = rep.exceptional_primes.size();
  rep.exceptional_sum = exc_sum.value();
  rep.mertens_total = mertens.value();
  rep.ratio = rep.mertens_total > 0 ? rep.exceptional_sum / rep.mertens_total : 0.0;
  return rep;
}

}  // namespace awalk
