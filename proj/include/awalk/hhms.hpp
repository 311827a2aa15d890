#pragma once

#include <cstdint>
#include <vector>

namespace awalk {
namespace hhms {

// Closed-form entropy constant for the model walk a = 2, steps uniform on
// {-1, 0, 1}: H / log 2 = log 3 - (3/2) L(1/3), where L is indexed by the
// subtractive-Euclid step count e(i, j) over coprime pairs. All logs here
// are natural; the division by log 2 happens once, in entropy_ratio.

inline constexpr int kLevelCap = 40;
inline constexpr double kPublishedRatio = 0.9887658714;     // H / log 2
inline constexpr double kPublishedCutoff = 1.01136176816;   // (H / log 2)^{-1}

// Subtractive gcd steps from (i, j) down to (1, 1); the frozen convention is
// e(1, 1) = 0, e(1, 2) = 1 (calibrated against the published constant, see
// entropy_ratio). Pair must be coprime.
int euclid_subtractions(std::uint64_t i, std::uint64_t j);

struct LevelSum {
  int level = 0;
  std::uint64_t pair_count = 0;  // 2^{level-1}
  double a_n = 0.0;              // sum over the level of j log j (nats)
  std::uint64_t max_j = 0;       // Fibonacci-type extreme F_{level+2}
};

// All levels 1..n_max in one depth-first pass over the predecessor tree
// rooted at (1, 2), children (i, j) -> (j, i+j), (i, i+j). Subtrees are
// enumerated in parallel; partials merge in a fixed order, so results do
// not depend on the worker count.
std::vector<LevelSum> enumerate_levels(int n_max, int workers = 1);
LevelSum enumerate_level(int n, int workers = 1);

struct LSeries {
  double value = 0.0;      // partial sum of the second-difference series at z = 1/3
  double remainder = 0.0;  // |t_{n-2}| + |t_{n-1}| + |t_n|, convergence indicator
  std::vector<LevelSum> levels;
  std::vector<double> terms;  // terms[k] = b_{k+1} 3^{-(k+1)}
};

// (1 - 3z)^2 sum_n z^n a_n at z = 1/3 via the coefficient expansion
// b_n = a_n - 6 a_{n-1} + 9 a_{n-2} (a_0 = a_{-1} = 0).
LSeries L_at_one_third(int n_max, int workers = 1);

// (log 3 - (3/2) L(1/3)) / log 2, i.e. the entropy rate in bits per step.
double entropy_ratio(int n_max, int workers = 1);

// Entropy rate in nats (log 3 - (3/2) L(1/3)); the H_ref the mixing module
// consumes for the model walk.
double model_entropy_nats(int n_max, int workers = 1);

}  // namespace hhms
}  // namespace awalk
