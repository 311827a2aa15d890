#include "awalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "awalk/entropy.hpp"
#include "awalk/errors.hpp"
#include "awalk/hhms.hpp"
#include "awalk/mixing.hpp"
#include "awalk/numtheory.hpp"
#include "awalk/spectral.hpp"

namespace awalk {
namespace cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
std::string fmt(long long v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "1" : "0"; }

// One output document: named tables plus flat metadata / aggregate lists.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> meta;  // reproducibility block
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> aggregates;

  void meta_add(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
  void agg_add(const std::string& k, const std::string& v) { aggregates.emplace_back(k, v); }
};

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_csv(std::ostream& os, const Report& rep) {
  for (const auto& [k, v] : rep.meta) os << "# " << k << "=" << v << "\n";
  for (const auto& table : rep.tables) {
    os << "# table=" << table.name << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        os << row[c] << (c + 1 < row.size() ? "," : "\n");
  }
  for (const auto& [k, v] : rep.aggregates) os << "# " << k << "=" << v << "\n";
}

void write_json(std::ostream& os, const Report& rep) {
  nlohmann::ordered_json doc;
  for (const auto& [k, v] : rep.meta) doc["meta"][k] = v;
  for (const auto& table : rep.tables) {
    nlohmann::ordered_json tj;
    tj["columns"] = table.columns;
    tj["rows"] = table.rows;
    doc["tables"][table.name] = std::move(tj);
  }
  for (const auto& [k, v] : rep.aggregates) doc["aggregates"][k] = v;
  os << doc.dump(2) << "\n";
}

int emit(const RunConfig& cfg, const Report& rep) {
  const auto write = [&](std::ostream& os) {
    if (cfg.format == "json")
      write_json(os, rep);
    else
      write_csv(os, rep);
  };
  if (cfg.output.empty()) {
    write(std::cout);
    return 0;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << cfg.output << "\n";
    return 2;
  }
  write(out);
  return 0;
}

int env_workers() {
  if (const char* env = std::getenv("AWALK_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Context {
  WalkParams params;
  int workers;
  double h_ref;
  std::string h_ref_source;
};

Context make_context(const RunConfig& cfg, bool need_h_ref) {
  WalkParams params(cfg.a, parse_step_law(cfg.step_spec));
  Context ctx{params, cfg.workers > 0 ? cfg.workers : env_workers(), cfg.h_ref, "config"};
  if (need_h_ref && cfg.h_ref <= 0) {
    auto [h, src] = reference_entropy(params);
    ctx.h_ref = h;
    ctx.h_ref_source = src;
  }
  return ctx;
}

void stamp(Report& rep, const RunConfig& cfg, const Context* ctx) {
  rep.meta_add("tool", "awalk");
  rep.meta_add("version", kVersion);
  rep.meta_add("subcommand", cfg.subcommand);
  rep.meta_add("a", fmt(cfg.a));
  rep.meta_add("step", cfg.step_spec);
  rep.meta_add("seed", fmt(cfg.seed));
  rep.meta_add("tv_normalization", "half_l1");  // t_mix thresholds are on (1/2)||.||_1
  if (ctx) {
    rep.meta_add("workers", fmt(ctx->workers));
    if (ctx->h_ref > 0) {
      rep.meta_add("h_ref_nats", fmt(ctx->h_ref));
      rep.meta_add("h_ref_source", ctx->h_ref_source);
    }
  }
  if (!cfg.no_timestamp) rep.meta_add("timestamp", iso_timestamp());
}

constexpr double kLog2 = 0.69314718055994530942;

// ---- subcommands -----------------------------------------------------------

int run_entropy(const RunConfig& cfg) {
  Context ctx = make_context(cfg, false);
  const int n_max = cfg.n_max > 0 ? cfg.n_max : 24;
  const auto H = entropy_curve(ctx.params, n_max);
  const auto rates = rate_exact(ctx.params, n_max);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("n_max", fmt(n_max));
  Table t{"entropy_curve",
          {"n", "H_nats", "H_bits", "increment_nats", "increment_bits", "cesaro_nats",
           "cesaro_bits"},
          {}};
  for (int n = 0; n <= n_max; ++n) {
    const double inc = n >= 1 ? H[n] - H[n - 1] : 0.0;
    const double ces = n >= 1 ? H[n] / n : 0.0;
    t.rows.push_back({fmt(n), fmt(H[n]), fmt(H[n] / kLog2), fmt(inc), fmt(inc / kLog2), fmt(ces),
                      fmt(ces / kLog2)});
  }
  rep.tables.push_back(std::move(t));
  rep.agg_add("rate_increment_nats", fmt(rates.increment.value));
  rep.agg_add("rate_increment_bits", fmt(rates.increment.value_bits()));
  rep.agg_add("rate_increment_width", fmt(rates.increment.standard_error));
  rep.agg_add("rate_increment_width_note", "heuristic (last-difference)");
  rep.agg_add("rate_cesaro_nats", fmt(rates.cesaro.value));
  rep.agg_add("rate_cesaro_bits", fmt(rates.cesaro.value_bits()));
  rep.agg_add("rate_cesaro_width", fmt(rates.cesaro.standard_error));
  return emit(cfg, rep);
}

int run_smb(const RunConfig& cfg) {
  Context ctx = make_context(cfg, false);
  const int n = cfg.n > 0 ? cfg.n : 200;
  const auto est = smb_estimate(ctx.params, n, cfg.samples, cfg.seed, ctx.workers);

  Report rep;
  stamp(rep, cfg, &ctx);
  Table t{"smb_estimate",
          {"n", "samples", "estimate_nats", "estimate_bits", "se_nats", "se_bits"},
          {{fmt(n), fmt(static_cast<long long>(cfg.samples)), fmt(est.value),
            fmt(est.value_bits()), fmt(est.standard_error), fmt(est.standard_error_bits())}}};
  rep.tables.push_back(std::move(t));

  if (exact_support_sites(ctx.params, n) <= kDefaultMaxSites) {
    const double tail = smb_tail(ctx.params, n, cfg.alpha);
    const double var = efron_stein_variance(ctx.params, n);
    Table d{"exact_diagnostics",
            {"n", "alpha", "tail_mass", "tail_alpha2_n", "var_z", "var_z_over_n"},
            {{fmt(n), fmt(cfg.alpha), fmt(tail), fmt(tail * cfg.alpha * cfg.alpha * n), fmt(var),
              fmt(var / n)}}};
    rep.tables.push_back(std::move(d));
  } else {
    rep.agg_add("exact_diagnostics", "skipped (n beyond dense-evolution cap)");
  }
  return emit(cfg, rep);
}

int run_hhms(const RunConfig& cfg) {
  Context ctx = make_context(cfg, false);
  const auto series = hhms::L_at_one_third(cfg.levels, ctx.workers);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("levels", fmt(cfg.levels));
  Table t{"levels", {"level", "pair_count", "a_n", "max_j", "term", "ratio_partial"}, {}};
  KahanSum partial;
  for (std::size_t i = 0; i < series.levels.size(); ++i) {
    const auto& lv = series.levels[i];
    partial += series.terms[i];
    const double ratio = (std::log(3.0) - 1.5 * partial.value()) / kLog2;
    t.rows.push_back({fmt(lv.level), fmt(lv.pair_count), fmt(lv.a_n), fmt(lv.max_j),
                      fmt(series.terms[i]), fmt(ratio)});
  }
  rep.tables.push_back(std::move(t));

  const double ratio = (std::log(3.0) - 1.5 * series.value) / kLog2;
  rep.agg_add("L_one_third", fmt(series.value));
  rep.agg_add("L_remainder_indicator", fmt(series.remainder));
  rep.agg_add("entropy_ratio_bits", fmt(ratio));
  rep.agg_add("entropy_nats", fmt(ratio * kLog2));
  rep.agg_add("mixing_constant", fmt(1.0 / ratio));
  return emit(cfg, rep);
}

int run_tv(const RunConfig& cfg) {
  Context ctx = make_context(cfg, true);
  const int n_max =
      cfg.n_max > 0 ? cfg.n_max : static_cast<int>(4.0 * std::log2(static_cast<double>(cfg.q))) + 16;
  const auto rec = tv_curve(ctx.params, cfg.q, n_max, cfg.eps, /*keep_samples=*/true);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("q", fmt(cfg.q));
  rep.meta_add("eps", fmt(cfg.eps));
  Table t{"tv_curve", {"n", "half_tv", "l1_tv"}, {}};
  for (const auto& [n, tv] : rec.tv_samples) t.rows.push_back({fmt(n), fmt(tv), fmt(2.0 * tv)});
  rep.tables.push_back(std::move(t));
  rep.agg_add("is_prime", fmt(rec.is_prime));
  rep.agg_add("t_mix", fmt(rec.t_mix));
  rep.agg_add("t_over_log2_q", fmt(rec.t_over_log2_q));
  if (rec.t_mix > 0)
    rep.agg_add("normalized", fmt(rec.t_mix * ctx.h_ref / std::log(static_cast<double>(cfg.q))));
  return emit(cfg, rep);
}

ModulusFilter parse_filter(const std::string& name) {
  if (name == "odd") return ModulusFilter::Odd;
  if (name == "prime") return ModulusFilter::Prime;
  if (name == "coprime") return ModulusFilter::CoprimeToA;
  if (name == "stride") return ModulusFilter::Stride;
  throw std::invalid_argument("unknown filter: " + name + " (odd | prime | coprime | stride)");
}

int run_mix_scan(const RunConfig& cfg) {
  Context ctx = make_context(cfg, true);
  ScanConfig sc;
  sc.q_min = cfg.q_min;
  sc.q_max = cfg.q_max;
  sc.eps = cfg.eps;
  sc.filter = parse_filter(cfg.filter);
  sc.stride = cfg.stride;
  sc.max_moduli = cfg.max_moduli;
  sc.n_max = cfg.n_max;
  sc.h_ref = ctx.h_ref;
  sc.workers = ctx.workers;
  const auto rep_scan = mixing_scan(ctx.params, sc);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("q_min", fmt(cfg.q_min));
  rep.meta_add("q_max", fmt(cfg.q_max));
  rep.meta_add("eps", fmt(cfg.eps));
  rep.meta_add("filter", cfg.filter);
  if (!rep_scan.errors.empty()) {
    rep.meta_add("incomplete", "true");
    for (const auto& e : rep_scan.errors) rep.meta_add("error", e);
  }
  Table t{"records", {"q", "is_prime", "log2_q", "t_mix", "normalized", "t_over_log2_q"}, {}};
  for (const auto& r : rep_scan.records)
    t.rows.push_back(
        {fmt(r.q), fmt(r.is_prime), fmt(r.log2_q), fmt(r.t_mix), fmt(r.normalized),
         fmt(r.t_over_log2_q)});
  rep.tables.push_back(std::move(t));
  const auto& ag = rep_scan.aggregates;
  rep.agg_add("count", fmt(static_cast<long long>(ag.count)));
  rep.agg_add("unmixed", fmt(static_cast<long long>(ag.unmixed)));
  rep.agg_add("median_normalized", fmt(ag.median_normalized));
  rep.agg_add("q10_normalized", fmt(ag.q10_normalized));
  rep.agg_add("q90_normalized", fmt(ag.q90_normalized));
  rep.agg_add("min_normalized", fmt(ag.min_normalized));
  rep.agg_add("median_t_over_log2_q", fmt(ag.median_t_over_log2_q));
  rep.agg_add("min_t_over_log2_q", fmt(ag.min_t_over_log2_q));
  return emit(cfg, rep);
}

int run_exceptional(const RunConfig& cfg) {
  Context ctx = make_context(cfg, true);
  const auto fam =
      exceptional_family_scan(ctx.params, cfg.k_min, cfg.k_max, cfg.eps,
                              static_cast<int>(std::min<long long>(cfg.samples, 101)), cfg.seed,
                              ctx.workers);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("eps", fmt(cfg.eps));
  rep.meta_add("k_min", fmt(cfg.k_min));
  rep.meta_add("k_max", fmt(cfg.k_max));
  rep.meta_add("comparison_samples", fmt(fam.comparison_samples));
  Table t{"family",
          {"k", "q", "t_mix", "t_over_log2_q", "random_median", "excess_ratio"},
          {}};
  for (const auto& r : fam.rows)
    t.rows.push_back({fmt(r.k), fmt(r.q), fmt(r.t_mix), fmt(r.t_over_log2_q),
                      fmt(r.random_median), fmt(r.excess_ratio)});
  rep.tables.push_back(std::move(t));

  if (cfg.density) {
    const int n = cfg.n > 0 ? cfg.n : 60;
    const auto dens =
        exceptional_prime_density(ctx.params, n, cfg.eps, cfg.p_max, ctx.h_ref, ctx.workers);
    Table d{"prime_density",
            {"n", "eps", "p_max", "log_p_cutoff", "primes_scanned", "primes_exceptional",
             "exceptional_sum", "mertens_total", "ratio"},
            {{fmt(dens.n), fmt(dens.eps), fmt(dens.p_max), fmt(dens.log_p_cutoff),
              fmt(static_cast<long long>(dens.primes_scanned)),
              fmt(static_cast<long long>(dens.primes_exceptional)), fmt(dens.exceptional_sum),
              fmt(dens.mertens_total), fmt(dens.ratio)}}};
    rep.tables.push_back(std::move(d));
  }
  return emit(cfg, rep);
}

int run_spectrum(const RunConfig& cfg) {
  Context ctx = make_context(cfg, false);
  const int n = cfg.n > 0 ? cfg.n : 8;
  const auto slice = walk_spectrum(ctx.params, cfg.q, n);

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("q", fmt(cfg.q));
  rep.meta_add("n", fmt(n));
  Table t{"amplitudes", {"r", "re", "im", "abs", "abs2"}, {}};
  for (long long r = 0; r < cfg.q; ++r) {
    const cdouble z = slice.amplitudes[r];
    t.rows.push_back({fmt(r), fmt(z.real()), fmt(z.imag()), fmt(std::abs(z)), fmt(std::norm(z))});
  }
  rep.tables.push_back(std::move(t));

  const double spectral = cfg.q >= 2 ? l2_dist_sq_mod(ctx.params, cfg.q, n) : 0.0;
  rep.agg_add("l2_dist_sq_spectral", fmt(spectral));
  const auto dist = evolve_mod(ctx.params, cfg.q, n);
  KahanSum phys;
  const double u = 1.0 / static_cast<double>(cfg.q);
  for (double v : dist.mass_array()) phys += (v - u) * (v - u);
  rep.agg_add("l2_dist_sq_physical", fmt(static_cast<double>(cfg.q) * phys.value()));
  if (std::gcd(cfg.a, cfg.q) == 1 && cfg.q >= 2) {
    const double rho = rho_off_zero(ctx.params.step, ctx.params.a);
    rep.agg_add("rho_certified", fmt(rho));
    rep.agg_add("small_moduli_bound", fmt(small_moduli_bound(ctx.params, cfg.q, n, rho)));
  }
  return emit(cfg, rep);
}

int run_sieve_check(const RunConfig& cfg) {
  Context ctx = make_context(cfg, false);
  const long long q = cfg.q;
  const int n = cfg.n > 0 ? cfg.n : 8;
  const int m = cfg.m_avg;

  Report rep;
  stamp(rep, cfg, &ctx);
  rep.meta_add("q", fmt(q));
  rep.meta_add("q0", fmt(cfg.q0));
  rep.meta_add("n", fmt(n));
  rep.meta_add("m", fmt(m));
  rep.meta_add("trials", fmt(cfg.trials));
  Table t{"checks", {"check", "observed", "bound", "pass"}, {}};
  auto push = [&](const std::string& name, double observed, double bound, bool pass) {
    t.rows.push_back({name, fmt(observed), fmt(bound), fmt(pass)});
  };

  // Partition and Mobius identities on the walk distribution mod q.
  const auto nu_mod = evolve_mod(ctx.params, q, n);
  const auto dec = project(nu_mod, cfg.q0);
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(q);
  for (const auto& comp : dec.components) sum += comp;
  const double part_err = (sum - nu_mod.mass_array()).abs().maxCoeff();
  push("projection_partition_max_err", part_err, 1e-10, part_err <= 1e-10);

  const auto nu_lattice = evolve_exact<double>(ctx.params, n);
  const Eigen::ArrayXd mob = projection_mobius(nu_lattice, q, cfg.q0);
  const double mob_err = (mob - dec.component(q)).abs().maxCoeff();
  push("mobius_identity_max_err", mob_err, 1e-10, mob_err <= 1e-10);

  const auto norms = operator_norm_checks(q, cfg.q0, static_cast<int>(cfg.trials), cfg.seed);
  push("pi_l1_ratio_max", norms.max_pi_ratio, 1.0 + 1e-12, norms.max_pi_ratio <= 1.0 + 1e-12);
  push("P_l1_ratio_max", norms.max_P_ratio, static_cast<double>(norms.divisor_bound),
       norms.max_P_ratio <= static_cast<double>(norms.divisor_bound) + 1e-9);

  // Large sieve over seeded random measures on [-N, N].
  SplitMix64 rng(cfg.seed);
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto stream = rng.substream(1000 + static_cast<std::uint64_t>(trial));
    const long long N = 100 + static_cast<long long>(stream.next_below(900));
    Eigen::ArrayXd mass(2 * N + 1);
    KahanSum total;
    for (long long i = 0; i < 2 * N + 1; ++i) {
      mass[i] = stream.next_double();
      total += mass[i];
    }
    mass /= total.value();
    const LatticeMeasure<double> nu(-N, std::move(mass));
    const auto ls = large_sieve_sum(nu, cfg.q0, cfg.big_q);
    worst_ratio = std::max(worst_ratio, ls.lhs / ls.bound);
  }
  push("large_sieve_lhs_over_bound_max", worst_ratio, 1.0, worst_ratio <= 1.0);

  // Multiplicity averaging: reproduces mu_{n+m} when nu = mu_n, and obeys
  // the Cauchy-Schwarz transform bound at random rational frequencies.
  const auto averaged = multiplicity_average(ctx.params, nu_lattice, n, m);
  const auto mu_nm = evolve_exact<double>(ctx.params, n + m);
  const double avg_err = l1_distance(averaged, mu_nm);
  push("multiplicity_identity_l1_err", avg_err, 1e-10, avg_err <= 1e-10);
  const double margin = multiplicity_cs_margin(ctx.params, averaged, nu_lattice, n, m,
                                               static_cast<int>(cfg.trials), cfg.seed);
  push("multiplicity_cs_margin_max", margin, 1e-12, margin <= 1e-12);

  rep.tables.push_back(std::move(t));
  return emit(cfg, rep);
}

}  // namespace

StepLaw parse_step_law(const std::string& spec) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("step law \"" + spec + "\": " + why);
  };
  std::vector<std::pair<long long, long long>> atoms;
  if (spec.size() > 2 && spec[0] == 'u' && spec[1] == '{') {
    if (spec.back() != '}') fail("expected closing '}'");
    std::stringstream ss(spec.substr(2, spec.size() - 3));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      long long off = 0;
      try {
        off = std::stoll(item, &pos);
      } catch (...) {
        fail("bad offset '" + item + "'");
      }
      if (pos != item.size()) fail("bad offset '" + item + "'");
      atoms.emplace_back(off, 1);
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) fail("expected offset:weight in '" + item + "'");
      try {
        std::size_t p1 = 0, p2 = 0;
        const long long off = std::stoll(item.substr(0, colon), &p1);
        const long long w = std::stoll(item.substr(colon + 1), &p2);
        if (p1 != colon || p2 != item.size() - colon - 1) fail("bad atom '" + item + "'");
        atoms.emplace_back(off, w);
      } catch (const std::invalid_argument&) {
        fail("bad atom '" + item + "'");
      }
    }
  }
  if (atoms.empty()) fail("no atoms");
  return StepLaw(std::move(atoms));  // duplicate/weight/gcd diagnostics from StepLaw
}

std::string render_step_law(const StepLaw& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.offset(i)) + ':' + std::to_string(s.weight(i));
  }
  return out;
}

std::pair<double, std::string> reference_entropy(const WalkParams& p) {
  static const StepLaw model = StepLaw::uniform({-1, 0, 1});
  if (p.a == 2 && p.step == model)
    return {hhms::model_entropy_nats(24), "hhms-closed-form(levels=24)"};
  int n = 4;
  while (n < 24 && exact_support_sites(p, n + 1) <= (1LL << 22)) ++n;
  const auto rates = rate_exact(p, n);
  return {rates.increment.value, "exact-increment(n=" + std::to_string(n) + ")"};
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.subcommand == "entropy") return run_entropy(cfg);
    if (cfg.subcommand == "smb") return run_smb(cfg);
    if (cfg.subcommand == "hhms") return run_hhms(cfg);
    if (cfg.subcommand == "tv") return run_tv(cfg);
    if (cfg.subcommand == "mix-scan") return run_mix_scan(cfg);
    if (cfg.subcommand == "exceptional") return run_exceptional(cfg);
    if (cfg.subcommand == "spectrum") return run_spectrum(cfg);
    if (cfg.subcommand == "sieve-check") return run_sieve_check(cfg);
    std::cerr << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_cli(int argc, char** argv) {
  CLI::App app{"awalk: numerical laboratory for the affine walk X_{n+1} = a X_n + b_n mod q"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "multiplier a >= 2");
    sub->add_option("--step", cfg.step_spec, "step law, e.g. u{-1,0,1} or -1:1,0:1,1:1");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--workers", cfg.workers, "worker threads (default: AWALK_WORKERS or cores)");
    sub->add_option("--output,-o", cfg.output, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit timestamp (byte-stable output)");
  };

  auto* entropy = app.add_subcommand("entropy", "exact entropy curve and rate estimates");
  entropy->add_option("--n-max", cfg.n_max, "largest n (default 24)");
  add_common(entropy);

  auto* smb = app.add_subcommand("smb", "Monte Carlo entropy rate and concentration");
  smb->add_option("--n", cfg.n, "walk length (default 200)");
  smb->add_option("--samples", cfg.samples, "sample count (default 10000)");
  smb->add_option("--alpha", cfg.alpha, "tail window alpha (default 0.1)");
  add_common(smb);

  auto* hh = app.add_subcommand("hhms", "closed-form entropy constant via level sums");
  hh->add_option("--levels", cfg.levels, "series truncation level (default 32, cap 40)");
  add_common(hh);

  auto* tv = app.add_subcommand("tv", "TV-to-uniform curve for one modulus");
  tv->add_option("--q", cfg.q, "modulus")->required();
  tv->add_option("--n-max", cfg.n_max, "steps (default 4 log2 q + 16)");
  tv->add_option("--eps", cfg.eps, "mixing threshold on half TV (default 0.25)");
  tv->add_option("--h-ref", cfg.h_ref, "entropy rate in nats (default: derived)");
  add_common(tv);

  auto* scan = app.add_subcommand("mix-scan", "mixing-time scan over moduli");
  scan->add_option("--q-min", cfg.q_min, "range start")->required();
  scan->add_option("--q-max", cfg.q_max, "range end")->required();
  scan->add_option("--eps", cfg.eps, "mixing threshold on half TV (default 0.25)");
  scan->add_option("--filter", cfg.filter, "odd | prime | coprime | stride");
  scan->add_option("--stride", cfg.stride, "stride for --filter stride");
  scan->add_option("--max-moduli", cfg.max_moduli, "even subsample to this many moduli");
  scan->add_option("--n-max", cfg.n_max, "per-q step cap (default 4 log2 q + 64)");
  scan->add_option("--h-ref", cfg.h_ref, "entropy rate in nats (default: derived)");
  auto* odd_flag = scan->add_flag("--odd", "shorthand for --filter odd");
  auto* prime_flag = scan->add_flag("--prime", "shorthand for --filter prime");
  add_common(scan);

  auto* exc = app.add_subcommand("exceptional", "a^k - 1 family scan and prime density");
  exc->add_option("--k-min", cfg.k_min, "smallest k (default 12)");
  exc->add_option("--k-max", cfg.k_max, "largest k (default 20)");
  exc->add_option("--eps", cfg.eps, "mixing threshold on half TV (default 0.0625 here)");
  exc->add_option("--samples", cfg.samples, "comparison moduli per k (default 15)");
  exc->add_flag("--density", cfg.density, "also run the weighted prime-density scan");
  exc->add_option("--n", cfg.n, "density: walk length (default 60)");
  exc->add_option("--p-max", cfg.p_max, "density: largest prime (default 1e5)");
  exc->add_option("--h-ref", cfg.h_ref, "entropy rate in nats (default: derived)");
  add_common(exc);

  auto* spec = app.add_subcommand("spectrum", "transform table and l2 distance bounds");
  spec->add_option("--q", cfg.q, "modulus")->required();
  spec->add_option("--n", cfg.n, "walk length (default 8)");
  add_common(spec);

  auto* sieve = app.add_subcommand("sieve-check", "projection / large-sieve / averaging checks");
  sieve->add_option("--q", cfg.q, "modulus (default 30)");
  sieve->add_option("--q0", cfg.q0, "base divisor q0 | q (default 1)");
  sieve->add_option("--n", cfg.n, "walk length (default 8)");
  sieve->add_option("--m", cfg.m_avg, "multiplicity window (default 4)");
  sieve->add_option("--Q", cfg.big_q, "large-sieve Q (default 64)");
  sieve->add_option("--trials", cfg.trials, "randomized trials (default 200)");
  add_common(sieve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*odd_flag) cfg.filter = "odd";
  if (*prime_flag) cfg.filter = "prime";
  // Per-subcommand defaults that differ from the shared ones.
  if (exc->parsed()) {
    if (exc->count("--eps") == 0) cfg.eps = 0.0625;
    if (exc->count("--samples") == 0) cfg.samples = 15;
  }
  if (sieve->parsed() && sieve->count("--q") == 0) cfg.q = 30;
  for (auto* sub : {entropy, smb, hh, tv, scan, exc, spec, sieve})
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  return run(cfg);
}

}  // namespace cli
}  // namespace awalk
