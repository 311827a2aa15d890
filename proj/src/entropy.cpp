#include "awalk/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "awalk/errors.hpp"
#include "awalk/kahan.hpp"

namespace awalk {

std::string EntropyEstimate::method_name() const {
  switch (method) {
    case Method::ExactIncrement: return "exact-increment";
    case Method::Cesaro: return "cesaro";
    case Method::SmbMonteCarlo: return "smb-monte-carlo";
    case Method::ClosedForm: return "hhms-closed-form";
  }
  return "?";
}

namespace {

// Walks mu_0 .. mu_n_max once, invoking fn(n, measure) at every level.
template <typename Fn>
void evolve_scan(const WalkParams& p, int n_max, long long max_sites, Fn&& fn) {
  if (n_max < 0) throw std::invalid_argument("evolve_scan: n_max must be >= 0");
  if (exact_support_sites(p, n_max) > max_sites)
    throw CapExceeded("entropy: n_max exceeds the configured site cap");
  LatticeMeasure<double> cur = LatticeMeasure<double>::delta(0);
  fn(0, cur);
  const StepLaw& s = p.step;
  const long long span = s.max_offset() - s.min_offset();
  for (int n = 1; n <= n_max; ++n) {
    const auto& cm = cur.mass_array();
    const Eigen::Index len = cm.size();
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(p.a * (len - 1) + span + 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double w = s.prob(j);
      const Eigen::Index shift = s.offset(j) - s.min_offset();
      for (Eigen::Index i = 0; i < len; ++i) out[p.a * i + shift] += w * cm[i];
    }
    cur = LatticeMeasure<double>(p.a * cur.origin() + s.min_offset(), std::move(out));
    fn(n, cur);
  }
}

}  // namespace

std::vector<double> entropy_curve(const WalkParams& p, int n_max, long long max_sites) {
  std::vector<double> H(n_max + 1, 0.0);
  evolve_scan(p, n_max, max_sites, [&](int n, const LatticeMeasure<double>& m) {
    H[n] = entropy(m);
  });
  return H;
}

RateEstimates rate_exact(const WalkParams& p, int n_max, long long max_sites) {
  if (n_max < 4) throw std::invalid_argument("rate_exact: n_max must be >= 4");
  const auto H = entropy_curve(p, n_max, max_sites);
  const double inc_n = H[n_max] - H[n_max - 1];
  const double inc_n1 = H[n_max - 1] - H[n_max - 2];
  RateEstimates out;
  out.increment = {inc_n, std::abs(inc_n - inc_n1), EntropyEstimate::Method::ExactIncrement, n_max, 0};
  const double ces_n = H[n_max] / n_max;
  const double ces_n1 = H[n_max - 1] / (n_max - 1);
  out.cesaro = {ces_n, std::abs(ces_n - ces_n1), EntropyEstimate::Method::Cesaro, n_max, 0};
  return out;
}

EntropyEstimate smb_estimate(const WalkParams& p, int n, std::int64_t samples, std::uint64_t seed,
                             int workers) {
  if (n < 1 || samples < 1) throw std::invalid_argument("smb_estimate: need n >= 1, samples >= 1");
  workers = std::max(1, workers);

  // Each sample gets its own derived stream, so the estimate depends only on
  // (seed, samples), not on the worker partition.
  SplitMix64 root(seed);
  const auto run_block = [&](std::int64_t lo, std::int64_t hi, KahanSum& sum, KahanSum& sum_sq) {
    for (std::int64_t i = lo; i < hi; ++i) {
      auto stream = root.substream(static_cast<std::uint64_t>(i));
      const BigInt x = sample_endpoint(p, n, stream);
      const double mass = point_mass(p, n, x);
      const double z = -std::log(mass) / static_cast<double>(n);
      sum += z;
      sum_sq += z * z;
    }
  };

  std::vector<KahanSum> sums(workers), sums_sq(workers);
  if (workers == 1) {
    run_block(0, samples, sums[0], sums_sq[0]);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t lo = w * chunk, hi = std::min<std::int64_t>(samples, (w + 1) * chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi, w] { run_block(lo, hi, sums[w], sums_sq[w]); });
    }
    for (auto& t : pool) t.join();
  }
  KahanSum sum, sum_sq;
  for (int w = 0; w < workers; ++w) {
    sum += sums[w].value();
    sum_sq += sums_sq[w].value();
  }

  const double mean = sum.value() / static_cast<double>(samples);
  double se = 0.0;
  if (samples > 1) {
    const double var =
        std::max(0.0, (sum_sq.value() - static_cast<double>(samples) * mean * mean) /
                          static_cast<double>(samples - 1));
    se = std::sqrt(var / static_cast<double>(samples));
  }
  return {mean, se, EntropyEstimate::Method::SmbMonteCarlo, n, samples};
}

namespace {

struct TailStats {
  double H = 0.0;
  double var = 0.0;
  std::vector<double> tails;
};

TailStats tail_stats(const LatticeMeasure<double>& m, const std::vector<double>& alphas, int n) {
  TailStats st;
  st.H = entropy(m);
  KahanSum var;
  std::vector<KahanSum> tails(alphas.size());
  const auto& mm = m.mass_array();
  for (Eigen::Index i = 0; i < mm.size(); ++i) {
    const double mass = mm[i];
    if (mass <= 0.0) continue;
    const double dev = std::abs(-std::log(mass) - st.H);
    var += mass * dev * dev;
    for (std::size_t k = 0; k < alphas.size(); ++k)
      if (dev >= alphas[k] * n) tails[k] += mass;
  }
  st.var = var.value();
  for (auto& t : tails) st.tails.push_back(t.value());
  return st;
}

}  // namespace

double smb_tail(const WalkParams& p, int n, double alpha, long long max_sites) {
  if (alpha <= 0) throw std::invalid_argument("smb_tail: alpha must be > 0");
  const auto m = evolve_exact<double>(p, n, max_sites);
  return tail_stats(m, {alpha}, n).tails[0];
}

double efron_stein_variance(const WalkParams& p, int n, long long max_sites) {
  const auto m = evolve_exact<double>(p, n, max_sites);
  return tail_stats(m, {}, n).var;
}

std::vector<ConcentrationRow> concentration_profile(const WalkParams& p, int n_max,
                                                    const std::vector<double>& alphas,
                                                    long long max_sites) {
  std::vector<ConcentrationRow> rows;
  rows.reserve(n_max + 1);
  evolve_scan(p, n_max, max_sites, [&](int n, const LatticeMeasure<double>& m) {
    auto st = tail_stats(m, alphas, n);
    rows.push_back({n, st.H, st.var, std::move(st.tails)});
  });
  return rows;
}

TypicalSetMeasure truncate_typical(const WalkParams& p, int n, double alpha, long long max_sites) {
  if (alpha <= 0) throw std::invalid_argument("truncate_typical: alpha must be > 0");
  const auto m = evolve_exact<double>(p, n, max_sites);
  const double H = entropy(m);
  const double window = alpha * n;

  const auto& mm = m.mass_array();
  Eigen::ArrayXd kept = Eigen::ArrayXd::Zero(mm.size());
  KahanSum kept_mass;
  for (Eigen::Index i = 0; i < mm.size(); ++i) {
    const double mass = mm[i];
    if (mass <= 0.0) continue;
    if (std::abs(-std::log(mass) - H) <= window) {
      kept[i] = mass;
      kept_mass += mass;
    }
  }
  const double in_mass = kept_mass.value();
  if (in_mass <= 0.0)
    throw std::runtime_error("truncate_typical: typical set is empty (alpha too small)");

  TypicalSetMeasure out;
  out.n = n;
  out.alpha = alpha;
  out.discarded_mass = std::max(0.0, 1.0 - in_mass);
  out.entropy_mu_n = H;
  kept /= in_mass;
  out.measure = LatticeMeasure<double>(m.origin(), std::move(kept));

  const auto& km = out.measure.mass_array();
  double mn = 1e300, mx = 0.0;
  for (Eigen::Index i = 0; i < km.size(); ++i) {
    if (km[i] <= 0.0) continue;
    mn = std::min(mn, km[i]);
    mx = std::max(mx, km[i]);
  }
  out.min_atom = mn;
  out.max_atom = mx;
  out.support_bound = std::exp(H + window) / (1.0 - out.discarded_mass);
  return out;
}

}  // namespace awalk
