#pragma once

#include <cmath>

namespace awalk {

// Compensated (Kahan-Neumaier) accumulator. Totals, entropies and TV sums
// run over up to ~1e8 terms; plain summation would lose the low digits that
// the second-difference series and the 1e-12 invariants need.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double init) : sum_(init) {}

  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace awalk
