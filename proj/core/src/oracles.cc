#include "robsel/oracles.h"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "robsel/error.h"

namespace robsel::oracles {

namespace {

constexpr long kMaxGridPoints = 1L << 21;

void require_feasible(const Instance& inst, const FirstStage& x) {
  const auto issues = first_stage_violations(inst, x);
  if (!issues.empty()) throw Error("infeasible first stage: " + issues.front());
}

std::vector<int> unselected(const Instance& inst, const FirstStage& x) {
  std::vector<int> open;
  for (int i = 0; i < inst.item_count(); ++i)
    if (!x.x[i]) open.push_back(i);
  return open;
}

Rational first_stage_cost(const Instance& inst, const FirstStage& x) {
  Rational total = 0;
  for (int i = 0; i < inst.item_count(); ++i)
    if (x.x[i]) total += inst.C[i];
  return total;
}

long enum_budget(const Instance& inst, long open_count) {
  const Rational whole = floor(inst.gamma);
  if (whole <= 0) return 0;
  if (whole > open_count) return open_count;
  return to_long(whole);
}

// Deviations that move nothing or cannot move stay off the grid walk.
std::vector<int> movable(const Instance& inst, const std::vector<int>& open) {
  std::vector<int> ids;
  for (int i : open)
    if (inst.d[i] > 0) ids.push_back(i);
  return ids;
}

void check_grid_size(long steps, std::size_t movable_count) {
  double points = 1;
  for (std::size_t t = 0; t < movable_count; ++t) points *= static_cast<double>(steps) + 1;
  if (points > static_cast<double>(kMaxGridPoints))
    throw Error("deviation grid would exceed " + std::to_string(kMaxGridPoints) + " points");
}

Rational grid_max(const Instance& inst, const FirstStage& x, const std::vector<int>& ids,
                  long steps) {
  Scenario s;
  s.c = inst.c_lo;
  Rational best = second_stage_cost(inst, x, s);  // the all-zero deviation

  Rational budget = 0;
  const auto walk = [&](const auto& self, std::size_t t) -> void {
    if (t == ids.size()) {
      const Rational value = second_stage_cost(inst, x, s);
      if (value > best) best = value;
      return;
    }
    const int i = ids[t];
    self(self, t + 1);  // step 0: cost stays at c_lo, budget untouched
    for (long step = 1; step <= steps; ++step) {
      // Both kinds price the grid point c_lo + d*step/K; only the budget
      // accounting differs (delta itself for Continuous, the rise for Alt).
      const Rational unit = inst.kind == UncertaintyKind::Continuous
                                ? rat(step, steps)
                                : inst.d[i] * rat(step, steps);
      if (budget + unit > inst.gamma) break;  // larger steps only cost more
      budget += unit;
      s.c[i] = inst.c_lo[i] + inst.d[i] * rat(step, steps);
      self(self, t + 1);
      budget -= unit;
    }
    s.c[i] = inst.c_lo[i];
  };
  walk(walk, 0);
  return best;
}

}  // namespace

GridSpec make_grid_spec(const Instance& inst, const FirstStage& x, long steps) {
  if (steps < 1) throw Error("grid resolution must be at least 1");
  GridSpec spec;
  spec.steps = steps;
  spec.bound = 0;
  if (inst.gamma > 0)
    for (int i : unselected(inst, x)) spec.bound += inst.d[i] / steps;
  return spec;
}

GridInterval adversary_grid(const Instance& inst, const FirstStage& x, const GridSpec& spec) {
  if (inst.kind == UncertaintyKind::Discrete)
    throw Error("adversary_grid covers Continuous/AltContinuous; use adversary_enum_d");
  if (spec.steps < 1) throw Error("grid resolution must be at least 1");
  require_feasible(inst, x);

  const std::vector<int> open = unselected(inst, x);
  if (open.size() > 6)
    throw Error("adversary_grid is capped at 6 unselected items, got " +
                std::to_string(open.size()));
  const std::vector<int> ids = movable(inst, open);
  check_grid_size(spec.steps, ids.size());

  const Rational certified = make_grid_spec(inst, x, spec.steps).bound;
  if (spec.bound < certified)
    throw Error("grid spec understates the certified bound " + to_string(certified));

  const Rational lower = grid_max(inst, x, ids, spec.steps);
  return {lower, lower + spec.bound};
}

DiscreteAttack adversary_enum_d(const Instance& inst, const FirstStage& x) {
  if (inst.kind != UncertaintyKind::Discrete)
    throw Error("adversary_enum_d expects a Discrete instance");
  if (!is_integer(inst.gamma)) throw Error("discrete budget must be an integer");
  if (inst.gamma < 0) throw Error("budget gamma is negative");
  require_feasible(inst, x);

  const std::vector<int> open = unselected(inst, x);
  if (open.size() > 20)
    throw Error("adversary_enum_d is capped at 20 unselected items, got " +
                std::to_string(open.size()));
  const long budget = enum_budget(inst, static_cast<long>(open.size()));

  Scenario s;
  s.c = inst.c_lo;
  DiscreteAttack best;
  best.value = second_stage_cost(inst, x, s);

  const std::uint32_t masks = 1u << open.size();
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    if (std::popcount(mask) > budget) continue;
    for (std::size_t t = 0; t < open.size(); ++t)
      s.c[open[t]] = (mask >> t) & 1u ? inst.c_hi(open[t]) : inst.c_lo[open[t]];
    const Rational value = second_stage_cost(inst, x, s);
    if (value > best.value) {
      best.value = value;
      best.attack.clear();
      for (std::size_t t = 0; t < open.size(); ++t)
        if ((mask >> t) & 1u) best.attack.push_back(open[t]);
    }
  }
  return best;
}

OracleSolve oracle_solve(const Instance& inst, long grid_steps) {
  const int n = inst.item_count();
  const bool discrete = inst.kind == UncertaintyKind::Discrete;
  const int cap = discrete ? 12 : 6;
  if (n > cap)
    throw Error("oracle_solve is capped at " + std::to_string(cap) + " items for kind " +
                to_string(inst.kind) + ", got " + std::to_string(n));
  if (!discrete && grid_steps < 1) throw Error("grid resolution must be at least 1");

  const Instance* work = &inst;
  Instance floored;  // binary deviations cannot use a fractional budget slice
  if (discrete && !is_integer(inst.gamma)) {
    floored = inst;
    floored.gamma = floor(inst.gamma);
    work = &floored;
  }

  std::vector<int> bucket_of(n, -1);
  for (int j = 0; j < inst.bucket_count(); ++j)
    for (int i : inst.buckets[j]) bucket_of[i] = j;

  FirstStage current;
  current.x.assign(n, 0);
  std::vector<int> picked(inst.bucket_count(), 0);

  bool found = false;
  OracleSolve best;

  const auto visit = [&](const auto& self, int i) -> void {
    if (i == n) {
      const Rational base = first_stage_cost(inst, current);
      Rational lower, upper;
      if (discrete) {
        lower = base + adversary_enum_d(*work, current).value;
        upper = lower;
      } else {
        const GridSpec spec = make_grid_spec(inst, current, grid_steps);
        const GridInterval interval = adversary_grid(inst, current, spec);
        lower = base + interval.lower;
        upper = base + interval.upper;
      }
      if (!found || upper < best.upper) {
        best.upper = upper;
        best.x = current;
      }
      if (!found || lower < best.lower) best.lower = lower;
      found = true;
      return;
    }
    self(self, i + 1);
    const int j = bucket_of[i];
    if (j >= 0 && picked[j] < inst.p[j]) {
      current.x[i] = 1;
      ++picked[j];
      self(self, i + 1);
      --picked[j];
      current.x[i] = 0;
    }
  };
  visit(visit, 0);

  if (!found) throw Error("no feasible first stage");
  return best;
}

KnapsackSolution knapsack_bruteforce(const std::vector<long>& sizes,
                                     const std::vector<long>& values, long capacity) {
  if (sizes.size() != values.size()) throw Error("size and value lists differ in length");
  if (sizes.size() > 20)
    throw Error("knapsack_bruteforce is capped at 20 items, got " + std::to_string(sizes.size()));
  if (capacity < 0) throw Error("knapsack capacity must be nonnegative");

  const std::uint32_t masks = 1u << sizes.size();
  KnapsackSolution best;  // the empty subset is always feasible
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    long size = 0, value = 0;
    for (std::size_t t = 0; t < sizes.size(); ++t)
      if ((mask >> t) & 1u) {
        size += sizes[t];
        value += values[t];
      }
    if (size > capacity || value < best.value) continue;
    std::vector<int> subset;
    for (std::size_t t = 0; t < sizes.size(); ++t)
      if ((mask >> t) & 1u) subset.push_back(static_cast<int>(t));
    if (value > best.value || (value == best.value && subset < best.subset)) {
      best.value = value;
      best.subset = std::move(subset);
    }
  }
  return best;
}

SubsetSum subset_sum_bruteforce(const std::vector<long>& values, long target) {
  if (values.size() > 20)
    throw Error("subset_sum_bruteforce is capped at 20 items, got " +
                std::to_string(values.size()));
  const std::uint32_t masks = 1u << values.size();
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    long sum = 0;
    for (std::size_t t = 0; t < values.size(); ++t)
      if ((mask >> t) & 1u) sum += values[t];
    if (sum == target) {
      SubsetSum result;
      result.found = true;
      for (std::size_t t = 0; t < values.size(); ++t)
        if ((mask >> t) & 1u) result.witness.push_back(static_cast<int>(t));
      return result;
    }
  }
  return {};
}

}  // namespace robsel::oracles
