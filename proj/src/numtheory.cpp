#include "awalk/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace awalk {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  auto strip = [&](std::uint64_t p) {
    if (n % p != 0) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    strip(f);
    strip(f + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  auto fac = factorize(n);
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : fac) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(std::uint64_t n) {
  auto fac = factorize(n);
  int m = 1;
  for (auto [p, e] : fac) {
    (void)p;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t d = 1;
  for (auto [p, e] : factorize(n)) {
    (void)p;
    d *= static_cast<std::uint64_t>(e + 1);
  }
  return d;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      if (i <= n / i)
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return primes;
}

int ceil_log_base(std::uint64_t a, std::uint64_t q) {
  if (a < 2) throw std::invalid_argument("ceil_log_base: base must be >= 2");
  int m = 0;
  __uint128_t pow = 1;
  while (pow < q) {
    pow *= a;
    ++m;
  }
  return m;
}

}  // namespace awalk
