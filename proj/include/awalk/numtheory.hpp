#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace awalk {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Trial-division factorization, (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);  // sorted
int mobius(std::uint64_t n);                           // 0 if not squarefree
std::uint64_t divisor_count(std::uint64_t n);          // d(n)

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Smallest m >= 0 with a^m >= q (the paper-side n0 = ceil(log_a q)).
int ceil_log_base(std::uint64_t a, std::uint64_t q);

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace awalk

#include <numeric>

namespace awalk {

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace awalk
