#pragma once

#include <vector>

#include "robsel/instance.h"

namespace robsel::oracles {

struct GridSpec {
  long steps = 1;  // K: per-item deviation resolution
  Rational bound;  // certified one-sided error of the grid value
};

// Certified bound for adversary_grid: flooring any optimal deviation onto the
// grid keeps it feasible and lowers each unselected cost by at most d_i/K, so
// the gap is at most sum of d_i/K over unselected items, and exactly 0 when
// gamma = 0 (the grid holds the only feasible deviation). Halving under
// K -> 2K is what makes refined intervals nest.
GridSpec make_grid_spec(const Instance& inst, const FirstStage& x, long steps);

struct GridInterval {
  Rational lower, upper;
};

// Brute-force adversary on the deviation grid for Continuous/AltContinuous
// instances. The true adversarial value lies in [lower, upper]. Guards: at
// most 6 unselected items and at most 2^21 grid points; the spec's bound must
// cover the recomputed certified bound.
GridInterval adversary_grid(const Instance& inst, const FirstStage& x, const GridSpec& spec);

struct DiscreteAttack {
  Rational value;
  std::vector<int> attack;  // attacked items, ascending
};

// Exact Discrete adversary by attack-set enumeration. Requires an integer
// budget and at most 20 unselected items.
DiscreteAttack adversary_enum_d(const Instance& inst, const FirstStage& x);

struct OracleSolve {
  Rational lower, upper;
  FirstStage x;  // attains the best upper bound, lexicographically smallest
};

// Reference solve: enumerates feasible first stages and brackets each with
// the matching adversary oracle. Exact (a point interval) for Discrete
// instances. Guards: at most 6 items for Continuous/AltContinuous, at most 12
// for Discrete.
OracleSolve oracle_solve(const Instance& inst, long grid_steps);

struct KnapsackSolution {
  long value = 0;
  std::vector<int> subset;  // lexicographically smallest optimal index set
};

// Max-value knapsack by subset enumeration; at most 20 items.
KnapsackSolution knapsack_bruteforce(const std::vector<long>& sizes,
                                     const std::vector<long>& values, long capacity);

struct SubsetSum {
  bool found = false;
  std::vector<int> witness;
};

// Subset-sum decision with a witness; at most 20 items.
SubsetSum subset_sum_bruteforce(const std::vector<long>& values, long target);

}  // namespace robsel::oracles
