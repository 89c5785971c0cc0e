#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "robsel/instance.h"
#include "robsel/rational.h"
#include "robsel/solvers.h"

namespace {

using namespace robsel;

// splitmix64, so benchmark inputs never depend on library RNG details.
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

Instance quota_one_instance(int items, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.kind = UncertaintyKind::Continuous;
  inst.gamma = rat(items, 7);
  const int per_bucket = 5;
  int next = 0;
  while (next < items) {
    std::vector<int> ids;
    for (int t = 0; t < per_bucket && next < items; ++t) {
      inst.C.push_back(rat(5 + rng.below(40), 1 + rng.below(4)));
      inst.c_lo.push_back(rat(rng.below(16), 1 + rng.below(4)));
      inst.d.push_back(rng.below(5) == 0 ? Rational(0)
                                         : rat(1 + rng.below(24), 1 + rng.below(4)));
      ids.push_back(next++);
    }
    inst.buckets.push_back(std::move(ids));
    inst.p.push_back(1);
  }
  return inst;
}

void BM_solve_2rs_c(benchmark::State& state) {
  const Instance inst = quota_one_instance(static_cast<int>(state.range(0)), 99);
  for (auto _ : state) {
    auto report = solvers::solve_2rs_c(inst);
    benchmark::DoNotOptimize(report.value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_solve_2rs_c)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();

void BM_adversary_value(benchmark::State& state) {
  const Instance inst = quota_one_instance(static_cast<int>(state.range(0)), 7);
  FirstStage x;
  x.x.assign(static_cast<std::size_t>(inst.item_count()), 0);
  Rng rng(3);
  for (std::size_t j = 0; j < inst.buckets.size(); ++j)
    if (rng.next() & 1u) x.x[inst.buckets[j][0]] = 1;
  for (auto _ : state) {
    auto report = solvers::adversary_value(inst, x);
    benchmark::DoNotOptimize(report.value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_adversary_value)->Arg(100)->Arg(200)->Arg(400)->Complexity();

}  // namespace

BENCHMARK_MAIN();
