#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robsel/instance.h"

namespace robsel::solvers {

struct AdversaryReport {
  Rational value;
  std::optional<Rational> pi_star;         // Continuous/AltContinuous: smallest dual minimizer
  std::optional<std::vector<int>> attack;  // Discrete: attacked items, ascending
};

// Exact worst-case completion cost max_c min_y for a fixed feasible first
// stage. Continuous/AltContinuous go through the dual candidate scan;
// Discrete floors a fractional budget (exact, deviations are binary) and uses
// the per-bucket attack table when every quota is 1, else attack enumeration.
AdversaryReport adversary_value(const Instance& inst, const FirstStage& x);

// alpha[j][g]: worst residual cost of bucket j when g attacks land in it;
// columns run 0..min(gamma, n) since extra budget is never useful.
struct AlphaTable {
  std::vector<std::vector<Rational>> alpha;
};

struct DiscreteAdversary {
  Rational value;
  AlphaTable table;
  std::vector<int> allocation;  // attacks assigned to each bucket
  std::vector<int> attack;      // attacked items, ascending
};

// Discrete adversary for quota-1 buckets and integer budget: within a bucket
// the optimal attack hits the cheapest unselected items by base cost, and a
// budget-allocation sweep combines the buckets.
DiscreteAdversary adversary_d(const Instance& inst, const FirstStage& x);

// First-stage cost of x plus adversary_value.
Rational total_value(const Instance& inst, const FirstStage& x);

struct SolveReport {
  Rational value;
  FirstStage x;
  std::optional<Rational> pi_star;
  std::optional<Scenario> worst_scenario;
  std::string method;
};

// O(n log n) exact solver for Continuous instances with every quota 1:
// per-bucket completion curves are clipped against the cheapest first-stage
// cost, summed, tilted by the budget and minimized over the breakpoints.
SolveReport solve_2rs_c(const Instance& inst);

// Polynomial exact solver for AltContinuous instances with general quotas:
// scans the finite dual candidate set; per candidate each bucket is solved by
// a counting DP with one guessed fractional piece.
SolveReport solve_2mrs_ac(const Instance& inst);

// Reference solver for every kind: enumerates feasible first stages in
// lexicographic bit order and prices each with adversary_value. Reports the
// lexicographically smallest optimum. Guarded by max_items.
SolveReport solve_exhaustive_dual(const Instance& inst, int max_items = 20);

// Dual prices at which some bucket's completion curve can kink, clipped to
// [0, 1]; shared by the AltContinuous solver and adversary.
std::vector<Rational> ac_candidates(const Instance& inst);

}  // namespace robsel::solvers
