#include <doctest.h>

#include <cmath>

#include "awalk/lattice_measure.hpp"
#include "awalk/rational.hpp"
#include "awalk/step_law.hpp"
#include "test_support.hpp"

using namespace awalk;
using testsupport::model_step;

namespace {
LatticeMeasure<double> u3() { return LatticeMeasure<double>::from_step_law(model_step()); }
}  // namespace

TEST_CASE("step law invariants") {
  CHECK_THROWS_AS(StepLaw({}), std::invalid_argument);
  CHECK_THROWS_AS(StepLaw({{1, 1}, {1, 2}}), std::invalid_argument);  // duplicate offset
  CHECK_THROWS_AS(StepLaw({{0, 0}, {1, 1}}), std::invalid_argument);  // weight < 1
  CHECK_THROWS_AS(StepLaw({{0, 1}, {2, 1}}), std::invalid_argument);  // gcd(diffs) = 2
  CHECK_THROWS_AS(StepLaw({{5, 1}}), std::invalid_argument);          // single atom
  CHECK_THROWS_AS(StepLaw({{3, 1}, {9, 2}, {15, 1}}), std::invalid_argument);

  const StepLaw s({{-1, 1}, {0, 2}, {1, 1}});
  CHECK(s.total() == 4);
  CHECK(s.min_prob() == doctest::Approx(0.25));
  CHECK(s.max_abs_offset() == 1);
  CHECK(s.mean_abs() == doctest::Approx(0.5));
  CHECK_NOTHROW(StepLaw::uniform({0, 1}));
  CHECK_THROWS_AS(StepLaw::uniform({3, 5}), std::invalid_argument);  // gcd(diffs) = 2
}

TEST_CASE("convolution examples") {
  const auto m = u3();
  SUBCASE("delta_0 is the identity") {
    const auto out = convolve(LatticeMeasure<double>::delta(0), m);
    CHECK(out.min_site() == -1);
    CHECK(out.max_site() == 1);
    for (long long x = -1; x <= 1; ++x) CHECK(out(x) == doctest::Approx(m(x)).epsilon(1e-14));
  }
  SUBCASE("u * u has masses (1,2,3,2,1)/9 on -2..2") {
    const auto out = convolve(m, m);
    const double e[] = {1, 2, 3, 2, 1};
    for (int i = 0; i < 5; ++i) CHECK(out(i - 2) == doctest::Approx(e[i] / 9.0).epsilon(1e-14));
  }
  SUBCASE("point masses add sites") {
    const auto out = convolve(LatticeMeasure<double>::delta(3), LatticeMeasure<double>::delta(5));
    CHECK(out.support_count() == 1);
    CHECK(out(8) == doctest::Approx(1.0));
  }
}

TEST_CASE("pushforward scaling") {
  CHECK(pushforward_scale(LatticeMeasure<double>::delta(1), 2)(2) == doctest::Approx(1.0));
  const auto scaled = pushforward_scale(u3(), 2);
  CHECK(scaled(-2) == doctest::Approx(1.0 / 3));
  CHECK(scaled(0) == doctest::Approx(1.0 / 3));
  CHECK(scaled(2) == doctest::Approx(1.0 / 3));
  CHECK(scaled(1) == 0.0);
  CHECK_THROWS_AS(pushforward_scale(u3(), 0), std::invalid_argument);

  SplitMix64 rng(42);
  for (int t = 0; t < 10; ++t) {
    auto stream = rng.substream(t);
    const auto m = testsupport::random_measure(stream, 50, 12);
    for (long long k : {2LL, -3LL, 7LL}) {
      const auto s = pushforward_scale(m, k);
      CHECK(entropy(s) == doctest::Approx(entropy(m)).epsilon(1e-12));
      CHECK(l2_norm_sq(s) == doctest::Approx(l2_norm_sq(m)).epsilon(1e-12));
      CHECK(s.total() == doctest::Approx(m.total()).epsilon(1e-14));
    }
    const auto tr = translate(m, 17);
    CHECK(entropy(tr) == doctest::Approx(entropy(m)).epsilon(1e-12));
    CHECK(l2_norm_sq(tr) == doctest::Approx(l2_norm_sq(m)).epsilon(1e-12));
  }
}

TEST_CASE("reduce_mod examples") {
  const auto d7 = reduce_mod(LatticeMeasure<double>::delta(7), 5);
  CHECK(d7.at(2) == doctest::Approx(1.0));
  const auto r3 = reduce_mod(u3(), 3);
  for (int x = 0; x < 3; ++x) CHECK(r3.at(x) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  // mu_2 for a = 2 reduced mod 5 against the 9-outcome enumeration b1 + 2 b2.
  const auto p = testsupport::model_params();
  const auto counts = testsupport::enumerate_counts(p, 2);
  Eigen::ArrayXd expect = Eigen::ArrayXd::Zero(5);
  for (auto [x, w] : counts) expect[((x % 5) + 5) % 5] += static_cast<double>(w) / 9.0;
  const auto got = reduce_mod(evolve_exact<double>(p, 2), 5);
  for (int x = 0; x < 5; ++x) CHECK(got.at(x) == doctest::Approx(expect[x]).epsilon(1e-14));

  // non-probability input rejected
  Eigen::ArrayXd half(1);
  half[0] = 0.5;
  CHECK_THROWS_AS(reduce_mod(LatticeMeasure<double>(0, half), 3), std::invalid_argument);
}

TEST_CASE("entropy examples") {
  CHECK(entropy(LatticeMeasure<double>::delta(0)) == 0.0);
  CHECK(entropy(u3()) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  const auto mu2 = evolve_exact<double>(testsupport::model_params(), 2);
  CHECK(entropy(mu2) ==
        doctest::Approx(std::log(9.0) - (4.0 / 9.0) * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("l2 norms") {
  CHECK(l2_norm_sq(LatticeMeasure<double>::delta(0)) == doctest::Approx(1.0));
  CHECK(l2_norm_sq(CyclicDistribution::uniform(17)) == doctest::Approx(1.0 / 17).epsilon(1e-14));
  CHECK(l2_norm_sq(convolve(u3(), u3())) == doctest::Approx(19.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("tv distance") {
  const auto u5 = CyclicDistribution::uniform(5);
  CHECK(l1_distance(u5, u5) == 0.0);
  CHECK(l1_distance(CyclicDistribution::delta(5, 0), u5) ==
        doctest::Approx(2.0 * (1.0 - 1.0 / 5)).epsilon(1e-14));
  CHECK_THROWS_AS(l1_distance(u5, CyclicDistribution::uniform(7)), std::invalid_argument);

  // half TV at q=5, n=3 against the 27-trajectory enumeration
  const auto p = testsupport::model_params();
  const auto counts = testsupport::enumerate_counts(p, 3);
  Eigen::ArrayXd hist = Eigen::ArrayXd::Zero(5);
  for (auto [x, w] : counts) hist[((x % 5) + 5) % 5] += static_cast<double>(w) / 27.0;
  KahanSum expected;
  for (int x = 0; x < 5; ++x) expected += std::abs(hist[x] - 0.2);
  const auto got =
      half_tv_distance(reduce_mod(evolve_exact<double>(p, 3), 5), CyclicDistribution::uniform(5));
  CHECK(got == doctest::Approx(0.5 * expected.value()).epsilon(1e-13));
}

TEST_CASE("convolution is commutative and associative on random sparse input") {
  SplitMix64 rng(7);
  for (int t = 0; t < 8; ++t) {
    auto s1 = rng.substream(3 * t);
    auto s2 = rng.substream(3 * t + 1);
    auto s3 = rng.substream(3 * t + 2);
    const auto A = testsupport::random_measure(s1, 40, 6);
    const auto B = testsupport::random_measure(s2, 25, 9);
    const auto C = testsupport::random_measure(s3, 30, 4);

    const auto AB = convolve(A, B);
    const auto BA = convolve(B, A);
    CHECK(l1_distance(AB, BA) <= 1e-12);
    CHECK(l1_distance(convolve(AB, C), convolve(A, convolve(B, C))) <= 1e-12);

    // reduction commutes with convolution (cyclic convolution on the far side)
    for (long long q : {7LL, 12LL}) {
      const auto lhs = reduce_mod(AB, q);
      const auto ra = reduce_mod(A, q);
      const auto rb = reduce_mod(B, q);
      Eigen::ArrayXd cyc = Eigen::ArrayXd::Zero(q);
      for (long long x = 0; x < q; ++x)
        for (long long y = 0; y < q; ++y) cyc[(x + y) % q] += ra.at(x) * rb.at(y);
      for (long long x = 0; x < q; ++x) CHECK(lhs.at(x) == doctest::Approx(cyc[x]).epsilon(1e-12));
    }
  }
}

TEST_CASE("l1 distance to uniform obeys the Cauchy-Schwarz chain") {
  // ||p - u_q|| <= sqrt(q) ||p - u_q||_2
  SplitMix64 rng(99);
  for (long long q : {11LL, 40LL, 101LL}) {
    for (int t = 0; t < 6; ++t) {
      auto stream = rng.substream(q * 100 + t);
      const auto pdist = testsupport::random_distribution(stream, q);
      const auto u = CyclicDistribution::uniform(q);
      KahanSum l2;
      for (long long x = 0; x < q; ++x) l2 += (pdist.at(x) - 1.0 / q) * (pdist.at(x) - 1.0 / q);
      CHECK(l1_distance(pdist, u) <=
            std::sqrt(static_cast<double>(q)) * std::sqrt(l2.value()) + 1e-12);
    }
  }
}

TEST_CASE("rational exact mode") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-2, 4).num() == -1);
  CHECK(Rational(1, -2).den() == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(1, 2) < Rational(2, 3));

  const auto p = testsupport::model_params();
  const auto exact = evolve_exact<Rational>(p, 2);
  CHECK(exact(0) == Rational(2, 9));
  CHECK(exact(-3) == Rational(1, 9));
  CHECK(exact.total() == Rational(1));
  const auto dbl = to_double(exact);
  CHECK(l1_distance(dbl, evolve_exact<double>(p, 2)) <= 1e-15);
}
