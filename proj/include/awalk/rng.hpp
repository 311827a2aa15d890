#pragma once

#include <bit>
#include <cstdint>

namespace awalk {

// Counter-based splittable generator built on the SplitMix64 finalizer.
// output(i) = mix64(key + i * GOLDEN); substreams re-key through the same
// mixer. The reproducibility contract is bit-exact output for a given
// (seed, stream, counter) on any platform; statistical quality is that of
// splitmix64, which is ample for Monte Carlo sampling here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++ctr_) * kGolden;
    return mix64(z);
  }

  // [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased draw from [0, m) by masked rejection (portable, no % bias).
  std::uint64_t next_below(std::uint64_t m) {
    if (m <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(m - 1);
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= m);
    return v;
  }

  // Independent stream derived from (key, index); does not disturb *this.
  SplitMix64 substream(std::uint64_t index) const {
    SplitMix64 s(mix64(key_ ^ mix64(index + 0x6A09E667F3BCC909ull)));
    return s;
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace awalk
