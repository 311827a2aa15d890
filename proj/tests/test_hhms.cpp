#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "awalk/errors.hpp"
#include "awalk/hhms.hpp"

using namespace awalk;

namespace {

// Independent pair collector: walk the predecessor tree explicitly.
std::set<std::pair<std::uint64_t, std::uint64_t>> tree_level_pairs(int n) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> cur{{1, 2}};
  for (int d = 1; d < n; ++d) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> next;
    for (auto [i, j] : cur) {
      next.insert({j, i + j});
      next.insert({i, i + j});
    }
    cur.swap(next);
  }
  return cur;
}

std::uint64_t fib(int k) {
  std::uint64_t a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t t = a + b;
    a = b;
    b = t;
  }
  return a;  // F_k with F_1 = F_2 = 1
}

}  // namespace

TEST_CASE("subtractive Euclid step counts") {
  CHECK(hhms::euclid_subtractions(1, 1) == 0);
  CHECK(hhms::euclid_subtractions(1, 2) == 1);
  CHECK(hhms::euclid_subtractions(2, 3) == 2);
  CHECK(hhms::euclid_subtractions(3, 5) == 3);
  CHECK(hhms::euclid_subtractions(2, 1) == 1);  // order-insensitive
  CHECK(hhms::euclid_subtractions(1, 7) == 6);
  CHECK_THROWS_AS(hhms::euclid_subtractions(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(hhms::euclid_subtractions(0, 3), std::invalid_argument);
}

TEST_CASE("level enumeration basics") {
  const auto levels = hhms::enumerate_levels(10);
  REQUIRE(levels.size() == 10);
  CHECK(levels[0].pair_count == 1);
  CHECK(levels[0].a_n == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(levels[0].max_j == 2);
  for (int n = 2; n <= 10; ++n) {
    CHECK(levels[n - 1].pair_count == (1ull << (n - 1)));
    CHECK(levels[n - 1].max_j == fib(n + 2));  // consecutive Fibonacci extremes
    CHECK(levels[n - 1].a_n > 0.0);
  }
  CHECK_THROWS_AS(hhms::enumerate_levels(41), CapExceeded);
  CHECK_THROWS_AS(hhms::enumerate_levels(0), std::invalid_argument);
}

TEST_CASE("inverse consistency with a brute-force scan") {
  // level pairs = { (i, j) : i < j <= F_{n+2}, coprime, e(i, j) = n }
  for (int n : {3, 6, 9, 12}) {
    const auto tree = tree_level_pairs(n);
    std::set<std::pair<std::uint64_t, std::uint64_t>> brute;
    const std::uint64_t jmax = fib(n + 2);
    for (std::uint64_t j = 2; j <= jmax; ++j)
      for (std::uint64_t i = 1; i < j; ++i)
        if (std::gcd(i, j) == 1 && hhms::euclid_subtractions(i, j) == n) brute.insert({i, j});
    CHECK(tree == brute);
    // and each enumerated pair maps back to its level
    for (auto [i, j] : tree) CHECK(hhms::euclid_subtractions(i, j) == n);
    // the accumulated level sum matches the set
    double a_n = 0;
    for (auto [i, j] : brute) a_n += static_cast<double>(j) * std::log(static_cast<double>(j));
    CHECK(hhms::enumerate_level(n).a_n == doctest::Approx(a_n).epsilon(1e-12));
  }
}

TEST_CASE("series terms decay and raw terms grow linearly") {
  const auto series = hhms::L_at_one_third(20);
  REQUIRE(series.terms.size() == 20);
  for (int n_max : {12, 16, 20})
    CHECK(std::abs(series.terms[n_max - 1]) < std::abs(series.terms[n_max - 5]));
  // raw a_n 3^-n increases with nearly constant slope
  std::vector<double> raw;
  for (const auto& lv : series.levels)
    raw.push_back(lv.a_n * std::pow(3.0, -lv.level));
  for (std::size_t i = 8; i < raw.size(); ++i) {
    const double slope = raw[i] - raw[i - 1];
    CHECK(slope > 0.2);
    CHECK(slope < 0.4);
  }
}

TEST_CASE("entropy ratio hits the published digits and stabilizes") {
  const double r16 = hhms::entropy_ratio(16);
  const double r20 = hhms::entropy_ratio(20);
  CHECK(r20 == doctest::Approx(hhms::kPublishedRatio).epsilon(1e-8));
  CHECK(1.0 / r20 == doctest::Approx(hhms::kPublishedCutoff).epsilon(1e-8));
  CHECK(std::abs(r20 - r16) <= hhms::L_at_one_third(16).remainder);
  const double r12 = hhms::entropy_ratio(12);
  CHECK(std::abs(r16 - r12) <= hhms::L_at_one_third(12).remainder);
}

TEST_CASE("worker count does not change the level sums") {
  const auto s1 = hhms::enumerate_levels(16, 1);
  const auto s2 = hhms::enumerate_levels(16, 2);
  REQUIRE(s1.size() == s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].a_n == s2[i].a_n);  // bitwise: merge order is fixed
    CHECK(s1[i].pair_count == s2[i].pair_count);
    CHECK(s1[i].max_j == s2[i].max_j);
  }
}
