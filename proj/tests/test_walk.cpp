#include <doctest.h>

#include <cmath>
#include <map>

#include "awalk/walk.hpp"
#include "test_support.hpp"

using namespace awalk;
using testsupport::model_params;

TEST_CASE("walk params validation") {
  CHECK_THROWS_AS(WalkParams(1, testsupport::model_step()), std::invalid_argument);
  CHECK_NOTHROW(WalkParams(10, StepLaw::uniform({0, 1})));
}

TEST_CASE("evolve_exact base cases") {
  const auto p = model_params();
  const auto mu0 = evolve_exact<double>(p, 0);
  CHECK(mu0.support_count() == 1);
  CHECK(mu0(0) == doctest::Approx(1.0));

  const auto mu1 = evolve_exact<double>(p, 1);
  for (long long x = -1; x <= 1; ++x) CHECK(mu1(x) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  const auto mu2 = evolve_exact<double>(p, 2);
  const double e[] = {1, 1, 2, 1, 2, 1, 1};
  for (int i = 0; i < 7; ++i) CHECK(mu2(i - 3) == doctest::Approx(e[i] / 9.0).epsilon(1e-14));

  CHECK_THROWS_AS(evolve_exact<double>(p, 80), CapExceeded);
}

TEST_CASE("evolve_mod base cases and gcd handling") {
  const auto p = model_params();
  const auto n0 = evolve_mod(p, 7, 0);
  CHECK(n0.at(0) == doctest::Approx(1.0));

  const auto u = evolve_mod(p, 3, 1);
  for (int x = 0; x < 3; ++x) CHECK(u.at(x) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  // gcd(a, q) != 1 is fine for evolution
  const auto even = evolve_mod(p, 4, 6);
  CHECK(even.mass_array().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("consistency triangle: evolve_mod = reduce_mod(evolve_exact)") {
  const auto p = model_params();
  for (long long q : {2LL, 3LL, 5LL, 8LL, 12LL, 49LL, 101LL}) {
    auto exact = evolve_exact<double>(p, 12);
    const auto direct = evolve_mod(p, q, 12);
    const auto folded = reduce_mod(exact, q);
    for (long long x = 0; x < q; ++x)
      CHECK(direct.at(x) == doctest::Approx(folded.at(x)).epsilon(1e-12));
  }
}

TEST_CASE("point_mass") {
  const auto p = model_params();
  SUBCASE("unique all-ones trajectory") {
    for (int n : {1, 4, 10, 40, 120}) {
      BigInt x = (BigInt(1) << n) - 1;  // sum of 2^i
      CHECK(point_mass(p, n, x) == doctest::Approx(std::pow(3.0, -n)).epsilon(1e-12));
    }
  }
  SUBCASE("outside the reachable range") {
    CHECK(point_mass(p, 5, 32) == 0.0);
    CHECK(point_mass(p, 5, -32) == 0.0);
    CHECK(point_mass(p, 0, 1) == 0.0);
    CHECK(point_mass(p, 0, 0) == doctest::Approx(1.0));
  }
  SUBCASE("matches dense evolution on the whole support at n = 12") {
    const auto mu = evolve_exact<double>(p, 12);
    for (long long x = mu.min_site(); x <= mu.max_site(); ++x)
      CHECK(point_mass(p, 12, x) == doctest::Approx(mu(x)).epsilon(1e-12));
  }
  SUBCASE("weighted law") {
    const WalkParams pw(3, StepLaw({{0, 2}, {1, 1}, {2, 1}}));
    const auto mu = evolve_exact<double>(pw, 7);
    for (long long x = mu.min_site(); x <= mu.max_site(); x += 3)
      CHECK(point_mass(pw, 7, x) == doctest::Approx(mu(x)).epsilon(1e-12));
  }
}

TEST_CASE("rational brute-force enumeration matches exact evolution") {
  const auto p = model_params();
  const int n = 8;
  const auto counts = testsupport::enumerate_counts(p, n);
  const auto exact = evolve_exact<Rational>(p, n);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p.step.total();
  CHECK(static_cast<Eigen::Index>(counts.size()) == exact.support_count());
  for (auto [x, w] : counts) CHECK(exact(x) == Rational(w, total));
}

TEST_CASE("sample_endpoint determinism and empirical law") {
  const auto p = model_params();
  SplitMix64 a(123), b(123);
  CHECK(sample_endpoint(p, 0, a) == 0);
  auto a2 = a.substream(5);
  auto b2 = b.substream(5);
  CHECK(sample_endpoint(p, 64, a2) == sample_endpoint(p, 64, b2));

  // frequencies over 1e5 draws at n=3 within 3 standard errors of exact masses
  const auto mu3 = evolve_exact<double>(p, 3);
  std::map<long long, long long> freq;
  const long long N = 100000;
  SplitMix64 root(2024);
  for (long long i = 0; i < N; ++i) {
    auto stream = root.substream(i);
    freq[sample_endpoint(p, 3, stream).convert_to<long long>()]++;
  }
  for (long long x = mu3.min_site(); x <= mu3.max_site(); ++x) {
    const double p_exact = mu3(x);
    const double observed = static_cast<double>(freq[x]) / N;
    const double se = std::sqrt(p_exact * (1 - p_exact) / N);
    CHECK(std::abs(observed - p_exact) <= 3.5 * se);
  }
}

TEST_CASE("half TV to uniform is monotone in n for coprime q") {
  const auto p = model_params();
  for (long long q : {7LL, 15LL, 101LL}) {
    ModEvolver ev(p, q);
    double prev = ev.half_tv_to_uniform();
    for (int n = 1; n <= 40; ++n) {
      ev.step();
      const double tv = ev.half_tv_to_uniform();
      CHECK(tv <= prev + 1e-12);
      prev = tv;
    }
  }
}

TEST_CASE("total mass stays 1 along exact evolution") {
  const auto p = model_params();
  for (int n : {5, 10, 16}) {
    const auto mu = evolve_exact<double>(p, n);
    CHECK(std::abs(mu.total() - 1.0) <= 1e-12 * n + 1e-15);
  }
}
