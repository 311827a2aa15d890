#include <doctest.h>

#include <cmath>

#include "awalk/entropy.hpp"
#include "awalk/hhms.hpp"
#include "test_support.hpp"

using namespace awalk;
using testsupport::model_params;

namespace {
constexpr double kLn2 = 0.69314718055994530942;
}

TEST_CASE("entropy curve base values") {
  const auto H = entropy_curve(model_params(), 4);
  CHECK(H[0] == 0.0);
  CHECK(H[1] == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(H[2] == doctest::Approx(std::log(9.0) - (4.0 / 9.0) * kLn2).epsilon(1e-13));
}

TEST_CASE("increments stay inside (0, min(log a, H(mu))]") {
  for (const auto& p :
       {model_params(), WalkParams(3, StepLaw::uniform({0, 1})),
        WalkParams(2, StepLaw({{-1, 1}, {0, 2}, {1, 1}}))}) {
    const auto H = entropy_curve(p, 14);
    const double cap = std::min(std::log(static_cast<double>(p.a)), p.step.entropy_nats());
    for (int n = 1; n <= 14; ++n) {
      const double inc = H[n] - H[n - 1];
      CHECK(inc > 0.0);
      CHECK(inc <= cap + 1e-12);
    }
  }
}

TEST_CASE("degenerate carry-free case: every increment is exactly log 2") {
  const WalkParams p(2, StepLaw::uniform({0, 1}));  // X_n uniform on [0, 2^n - 1]
  const auto rates = rate_exact(p, 16);
  CHECK(rates.increment.value == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(rates.increment.standard_error <= 1e-12);
  CHECK(rates.cesaro.value == doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("entropy ceiling binds for a = 10, steps {0, 1}") {
  const WalkParams p(10, StepLaw::uniform({0, 1}));
  const auto rates = rate_exact(p, 8);
  CHECK(rates.increment.value == doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("model-walk increment approaches the closed-form constant") {
  const auto rates = rate_exact(model_params(), 16);
  CHECK(rates.increment.value / kLn2 ==
        doctest::Approx(hhms::kPublishedRatio).epsilon(2e-6));
  CHECK(rates.increment.method_name() == "exact-increment");
  CHECK(rates.cesaro.method_name() == "cesaro");
}

TEST_CASE("smb estimator") {
  SUBCASE("carry-free law gives zero variance") {
    const WalkParams p(2, StepLaw::uniform({0, 1}));
    const auto est = smb_estimate(p, 40, 200, 9);
    CHECK(est.value == doctest::Approx(kLn2).epsilon(1e-12));
    CHECK(est.standard_error <= 1e-14);
    CHECK(est.samples == 200);
  }
  SUBCASE("agrees with the exact Cesaro value at n = 12 within 3 SE") {
    const auto p = model_params();
    const auto est = smb_estimate(p, 12, 20000, 1, 2);
    const auto H = entropy_curve(p, 12);
    CHECK(std::abs(est.value - H[12] / 12) <= 3.0 * est.standard_error);
  }
  SUBCASE("n = 200 lands near the closed-form constant (fixed seed)") {
    const auto est = smb_estimate(model_params(), 200, 2000, 1, 2);
    CHECK(std::abs(est.value_bits() - hhms::kPublishedRatio) <= 1e-2);
  }
  SUBCASE("worker count does not change the estimate") {
    const auto e1 = smb_estimate(model_params(), 20, 500, 3, 1);
    const auto e2 = smb_estimate(model_params(), 20, 500, 3, 2);
    CHECK(e1.value == doctest::Approx(e2.value).epsilon(1e-15));
  }
}

TEST_CASE("smb tail") {
  const auto p = model_params();
  CHECK(smb_tail(p, 10, 50.0) == 0.0);  // huge window keeps everything
  const WalkParams flat(2, StepLaw::uniform({0, 1}));
  CHECK(smb_tail(flat, 12, 0.01) == 0.0);  // Z constant

  // tail * alpha^2 * n stays bounded over the exact range
  for (double alpha : {0.05, 0.1, 0.2}) {
    const auto rows = concentration_profile(p, 16, {alpha});
    for (int n = 8; n <= 16; ++n)
      CHECK(rows[n].tail_mass[0] * alpha * alpha * n <= 0.5);
  }
}

TEST_CASE("efron-stein variance") {
  const WalkParams flat(2, StepLaw::uniform({0, 1}));
  CHECK(efron_stein_variance(flat, 10) == doctest::Approx(0.0).epsilon(1e-15));

  // n = 1 closed form for a weighted law: Var of log mu over the step law
  const WalkParams pw(2, StepLaw({{-1, 1}, {0, 2}, {1, 1}}));
  const double probs[] = {0.25, 0.5, 0.25};
  double H = 0, var = 0;
  for (double pr : probs) H -= pr * std::log(pr);
  for (double pr : probs) var += pr * (std::log(pr) + H) * (std::log(pr) + H);
  CHECK(efron_stein_variance(pw, 1) == doctest::Approx(var).epsilon(1e-13));

  // Var[Z]/n bounded (no superlinear growth) on the model walk
  const auto rows = concentration_profile(model_params(), 16, {});
  for (int n = 4; n <= 16; ++n) CHECK(rows[n].var_z / n <= 0.5);
}

TEST_CASE("concentration profile matches the one-shot operations") {
  const auto p = model_params();
  const auto rows = concentration_profile(p, 10, {0.1, 0.2});
  CHECK(rows.size() == 11);
  CHECK(rows[10].entropy_nats == doctest::Approx(entropy_curve(p, 10)[10]).epsilon(1e-13));
  CHECK(rows[10].var_z == doctest::Approx(efron_stein_variance(p, 10)).epsilon(1e-12));
  CHECK(rows[10].tail_mass[0] == doctest::Approx(smb_tail(p, 10, 0.1)).epsilon(1e-12));
  CHECK(rows[10].tail_mass[1] == doctest::Approx(smb_tail(p, 10, 0.2)).epsilon(1e-12));
}

TEST_CASE("typical-set truncation") {
  const auto p = model_params();
  SUBCASE("huge window keeps everything") {
    const auto t = truncate_typical(p, 10, 100.0);
    CHECK(t.discarded_mass == 0.0);
    CHECK(l1_distance(t.measure, evolve_exact<double>(p, 10)) <= 1e-12);
  }
  SUBCASE("discarded mass equals the tail by construction") {
    const auto t = truncate_typical(p, 14, 0.1);
    CHECK(t.discarded_mass == doctest::Approx(smb_tail(p, 14, 0.1)).epsilon(1e-12));
  }
  SUBCASE("the l1 identity ||mu - nu|| = 2 mu(S^c)") {
    const auto t = truncate_typical(p, 14, 0.08);
    CHECK(t.discarded_mass > 0.0);
    const double d = l1_distance(evolve_exact<double>(p, 14), t.measure);
    CHECK(d == doctest::Approx(2.0 * t.discarded_mass).epsilon(1e-11));
  }
  SUBCASE("window inequality holds for every retained atom, support bound holds") {
    const auto t = truncate_typical(p, 12, 0.1);
    const double H = t.entropy_mu_n;
    const auto mu = evolve_exact<double>(p, 12);
    const auto& km = t.measure.mass_array();
    for (Eigen::Index i = 0; i < km.size(); ++i) {
      if (km[i] <= 0) continue;
      const double mu_atom = mu(t.measure.origin() + i);
      CHECK(std::abs(-std::log(mu_atom) - H) <= 0.1 * 12 + 1e-12);
    }
    CHECK(static_cast<double>(t.measure.support_count()) <= t.support_bound + 1e-6);
    CHECK(t.min_atom >= std::exp(-H - 0.1 * 12) / (1.0 + 1e-12) / (1.0 - t.discarded_mass));
    CHECK(t.max_atom <= std::exp(-H + 0.1 * 12) * (1.0 + 1e-12) / (1.0 - t.discarded_mass));
  }
  SUBCASE("empty typical set is an error") {
    CHECK_THROWS_AS(truncate_typical(p, 14, 1e-9), std::runtime_error);
  }
}
