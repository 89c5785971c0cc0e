#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "robsel/instance.h"
#include "robsel/rational.h"

namespace robsel::testing {

// splitmix64: tiny, seedable, stable across platforms. Test data must not
// depend on the standard library's distribution implementations.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long below(long n) {
    return n <= 1 ? 0 : static_cast<long>(next() % static_cast<std::uint64_t>(n));
  }
};

// Rational from a small grid: numerator 0..num_max over denominator 1..4.
inline Rational grid_rational(Rng& rng, long num_max) {
  return rat(rng.below(num_max + 1), 1 + rng.below(4));
}

struct InstanceShape {
  UncertaintyKind kind = UncertaintyKind::Continuous;
  int max_buckets = 3;
  int max_bucket_size = 3;
  int max_quota = 1;       // clamped to the bucket size
  bool allow_zero_d = true;
  long gamma_num_max = 8;  // grid numerator bound; gamma stays fractional
};

inline Instance random_instance(Rng& rng, const InstanceShape& shape) {
  Instance inst;
  inst.kind = shape.kind;
  const int buckets = 1 + static_cast<int>(rng.below(shape.max_buckets));
  int next = 0;
  for (int j = 0; j < buckets; ++j) {
    const int size = 1 + static_cast<int>(rng.below(shape.max_bucket_size));
    std::vector<int> ids;
    for (int t = 0; t < size; ++t) {
      inst.C.push_back(grid_rational(rng, 24));
      inst.c_lo.push_back(grid_rational(rng, 16));
      const bool zero = shape.allow_zero_d && rng.below(5) == 0;
      inst.d.push_back(zero ? Rational(0) : grid_rational(rng, 16));
      ids.push_back(next++);
    }
    inst.buckets.push_back(std::move(ids));
    inst.p.push_back(1 + static_cast<int>(rng.below(std::min(shape.max_quota, size))));
  }
  inst.gamma = grid_rational(rng, shape.gamma_num_max);
  return inst;
}

inline FirstStage random_feasible(const Instance& inst, Rng& rng) {
  FirstStage x;
  x.x.assign(inst.item_count(), 0);
  for (std::size_t j = 0; j < inst.buckets.size(); ++j) {
    std::vector<int> order = inst.buckets[j];
    for (std::size_t t = order.size(); t > 1; --t)
      std::swap(order[t - 1], order[static_cast<std::size_t>(rng.below(static_cast<long>(t)))]);
    const long take = rng.below(inst.p[j] + 1);
    for (long k = 0; k < take; ++k) x.x[order[static_cast<std::size_t>(k)]] = 1;
  }
  return x;
}

struct KnapsackSource {
  std::vector<long> a, v;
  long b = 2;
};

inline KnapsackSource random_knapsack_source(Rng& rng, long max_items, long max_b) {
  KnapsackSource src;
  src.b = 2 + rng.below(max_b - 1);
  const long m = 1 + rng.below(max_items);
  long value_sum = 0;
  for (long t = 0; t < m; ++t) {
    src.a.push_back(1 + rng.below(src.b - 1));
    src.v.push_back(rng.below(10));
    value_sum += src.v.back();
  }
  if (value_sum == 0) src.v[0] = 1;
  return src;
}

}  // namespace robsel::testing
