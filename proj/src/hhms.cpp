#include "awalk/hhms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "awalk/errors.hpp"
#include "awalk/kahan.hpp"

namespace awalk {
namespace hhms {

int euclid_subtractions(std::uint64_t i, std::uint64_t j) {
  if (i < 1 || j < 1) throw std::invalid_argument("euclid_subtractions: need i, j >= 1");
  if (std::gcd(i, j) != 1)
    throw std::invalid_argument("euclid_subtractions: pair must be coprime");
  int count = 0;
  while (!(i == 1 && j == 1)) {
    if (i > j) std::swap(i, j);
    j -= i;
    ++count;
  }
  return count;
}

namespace {

struct Node {
  std::uint64_t i, j;
  int depth;
};

struct LevelAcc {
  KahanSum a_n;
  std::uint64_t count = 0;
  std::uint64_t max_j = 0;
};

// DFS below one root, accumulating j log j per depth. Depth of the root is
// root.depth; leaves stop at n_max.
void enumerate_subtree(Node root, int n_max, std::vector<LevelAcc>& acc) {
  std::vector<Node> stack;
  stack.reserve(n_max + 1);
  stack.push_back(root);
  while (!stack.empty()) {
    const Node t = stack.back();
    stack.pop_back();
    LevelAcc& a = acc[t.depth];
    a.a_n += static_cast<double>(t.j) * std::log(static_cast<double>(t.j));
    a.count += 1;
    a.max_j = std::max(a.max_j, t.j);
    if (t.depth < n_max) {
      stack.push_back({t.j, t.i + t.j, t.depth + 1});
      stack.push_back({t.i, t.i + t.j, t.depth + 1});
    }
  }
}

}  // namespace

std::vector<LevelSum> enumerate_levels(int n_max, int workers) {
  if (n_max < 1) throw std::invalid_argument("enumerate_levels: n_max must be >= 1");
  if (n_max > kLevelCap) throw CapExceeded("enumerate_levels: level cap exceeded");
  workers = std::max(1, workers);

  // Roots at the split depth, collected breadth-first in deterministic order.
  const int split = std::min(n_max, 12);
  std::vector<Node> frontier{{1, 2, 1}};
  std::vector<LevelAcc> head(n_max + 1);
  for (int d = 1; d < split; ++d) {
    for (const Node& t : frontier) {
      head[t.depth].a_n += static_cast<double>(t.j) * std::log(static_cast<double>(t.j));
      head[t.depth].count += 1;
      head[t.depth].max_j = std::max(head[t.depth].max_j, t.j);
    }
    std::vector<Node> next;
    next.reserve(2 * frontier.size());
    for (const Node& t : frontier) {
      next.push_back({t.j, t.i + t.j, t.depth + 1});
      next.push_back({t.i, t.i + t.j, t.depth + 1});
    }
    frontier.swap(next);
  }

  // Per-root accumulators merged in root order: byte-identical results for
  // any worker count.
  std::vector<std::vector<LevelAcc>> partial(frontier.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= frontier.size()) return;
      partial[k].assign(n_max + 1, LevelAcc{});
      enumerate_subtree(frontier[k], n_max, partial[k]);
    }
  };
  if (workers == 1 || frontier.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<LevelSum> out(n_max);
  for (int d = 1; d <= n_max; ++d) {
    KahanSum sum(head[d].a_n.value());
    std::uint64_t count = head[d].count;
    std::uint64_t max_j = head[d].max_j;
    for (const auto& part : partial) {
      sum += part[d].a_n.value();
      count += part[d].count;
      max_j = std::max(max_j, part[d].max_j);
    }
    out[d - 1] = {d, count, sum.value(), max_j};
  }
  return out;
}

LevelSum enumerate_level(int n, int workers) { return enumerate_levels(n, workers).back(); }

LSeries L_at_one_third(int n_max, int workers) {
  if (n_max < 4) throw std::invalid_argument("L_at_one_third: n_max must be >= 4");
  LSeries out;
  out.levels = enumerate_levels(n_max, workers);
  auto a = [&](int n) { return n >= 1 ? out.levels[n - 1].a_n : 0.0; };

  KahanSum L;
  double pow3 = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    pow3 /= 3.0;
    const double b_n = a(n) - 6.0 * a(n - 1) + 9.0 * a(n - 2);
    out.terms.push_back(b_n * pow3);
    L += out.terms.back();
  }
  out.value = L.value();
  out.remainder = std::abs(out.terms[n_max - 1]) + std::abs(out.terms[n_max - 2]) +
                  std::abs(out.terms[n_max - 3]);
  return out;
}

double model_entropy_nats(int n_max, int workers) {
  return std::log(3.0) - 1.5 * L_at_one_third(n_max, workers).value;
}

double entropy_ratio(int n_max, int workers) {
  return model_entropy_nats(n_max, workers) / std::log(2.0);
}

}  // namespace hhms
}  // namespace awalk
