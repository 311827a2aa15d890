#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace awalk {

// Finitely supported step distribution on Z with exact integer weights.
// P(offset b) = weight(b) / total. The standing aperiodicity assumption
// gcd(supp - supp) = 1 is enforced at construction: without it the walk
// lives on a coset of a proper subgroup and nothing downstream applies.
class StepLaw {
 public:
  explicit StepLaw(std::vector<std::pair<long long, long long>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("StepLaw: no atoms");
    std::sort(atoms.begin(), atoms.end());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i > 0 && atoms[i].first == atoms[i - 1].first)
        throw std::invalid_argument("StepLaw: duplicate offset");
      if (atoms[i].second < 1) throw std::invalid_argument("StepLaw: weight must be >= 1");
    }
    long long g = 0;
    for (std::size_t i = 1; i < atoms.size(); ++i)
      g = std::gcd(g, atoms[i].first - atoms[0].first);
    if (g != 1)
      throw std::invalid_argument(
          "StepLaw: offsets violate gcd(supp - supp) = 1 (support lies in a coset "
          "of a proper subgroup)");
    offsets_.reserve(atoms.size());
    weights_.reserve(atoms.size());
    total_ = 0;
    for (auto& [o, w] : atoms) {
      offsets_.push_back(o);
      weights_.push_back(w);
      total_ += w;
    }
  }

  static StepLaw uniform(std::initializer_list<long long> offsets) {
    std::vector<std::pair<long long, long long>> atoms;
    for (long long o : offsets) atoms.emplace_back(o, 1);
    return StepLaw(std::move(atoms));
  }

  std::size_t size() const { return offsets_.size(); }
  long long offset(std::size_t i) const { return offsets_[i]; }
  long long weight(std::size_t i) const { return weights_[i]; }
  long long total() const { return total_; }
  double prob(std::size_t i) const {
    return static_cast<double>(weights_[i]) / static_cast<double>(total_);
  }

  long long min_offset() const { return offsets_.front(); }
  long long max_offset() const { return offsets_.back(); }
  long long max_abs_offset() const {
    return std::max(std::llabs(min_offset()), std::llabs(max_offset()));
  }

  // min_b P(b); the constant c > 0 in the single-coordinate variance bound.
  double min_prob() const {
    long long w = *std::min_element(weights_.begin(), weights_.end());
    return static_cast<double>(w) / static_cast<double>(total_);
  }

  double mean_abs() const {  // E|b|, Lipschitz constant of the transform / 2*pi
    double s = 0;
    for (std::size_t i = 0; i < size(); ++i) s += prob(i) * static_cast<double>(std::llabs(offsets_[i]));
    return s;
  }

  double entropy_nats() const {
    double h = 0;
    for (std::size_t i = 0; i < size(); ++i) h -= prob(i) * std::log(prob(i));
    return h;
  }

  friend bool operator==(const StepLaw& a, const StepLaw& b) {
    return a.offsets_ == b.offsets_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<long long> offsets_;
  std::vector<long long> weights_;
  long long total_ = 0;
};

}  // namespace awalk
