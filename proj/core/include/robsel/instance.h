#pragma once

#include <string>
#include <vector>

#include "robsel/rational.h"

namespace robsel {

enum class UncertaintyKind {
  Discrete,       // c_i = c_lo_i + d_i * delta_i, delta in {0,1}^n, sum delta <= gamma
  Continuous,     // c_i = c_lo_i + d_i * delta_i, delta in [0,1]^n, sum delta <= gamma
  AltContinuous,  // c_i = c_lo_i + delta_i, delta_i in [0, d_i],    sum delta <= gamma
};

std::string to_string(UncertaintyKind kind);

// Two-stage selection instance. Items carry global indices 0..n-1 and are
// partitioned into buckets; once both stages are done, exactly p[j] items of
// bucket j are owned. The first stage pays C_i per selected item at known
// cost; the second stage completes every bucket after an adversary fixes the
// costs c within the uncertainty set described by (kind, c_lo, d, gamma).
struct Instance {
  UncertaintyKind kind = UncertaintyKind::Continuous;
  Rational gamma;
  std::vector<std::vector<int>> buckets;
  std::vector<int> p;        // quota per bucket
  std::vector<Rational> C;   // first-stage cost per item
  std::vector<Rational> c_lo;
  std::vector<Rational> d;   // deviation magnitude per item

  int item_count() const { return static_cast<int>(C.size()); }
  int bucket_count() const { return static_cast<int>(buckets.size()); }
  Rational c_hi(int item) const { return c_lo[item] + d[item]; }
};

struct FirstStage {
  std::vector<char> x;  // 0/1 per item
};

struct Deviation {
  std::vector<Rational> delta;
};

struct Scenario {
  std::vector<Rational> c;  // realized second-stage cost per item
};

// Every violated instance invariant, human readable, with offending indices;
// empty means the instance is well formed.
std::vector<std::string> validate(const Instance& inst);

// Quota violations of x (never selects more than p_j in a bucket, length n).
std::vector<std::string> first_stage_violations(const Instance& inst, const FirstStage& x);
bool is_feasible(const Instance& inst, const FirstStage& x);

// Realized cost vector of a deviation. Enforces the componentwise bounds of
// the instance's kind; the budget constraint is deliberately not checked, so
// infeasible deviations can be built and then rejected by contains().
Scenario scenario_from_deviation(const Instance& inst, const Deviation& dev);

// True iff the scenario lies in the uncertainty set. Deviations are recovered
// componentwise; an item with d_i = 0 must sit exactly at c_lo_i.
bool contains(const Instance& inst, const Scenario& s);

// Cheapest completion of x under realized costs s: per bucket, the
// p_j - (selected in j) cheapest unselected items are bought, ties broken by
// smallest index. Requires x feasible.
Rational second_stage_cost(const Instance& inst, const FirstStage& x, const Scenario& s);

// First-stage cost of x plus second_stage_cost under s.
Rational evaluate_total(const Instance& inst, const FirstStage& x, const Scenario& s);

// "0110"-style round trips for first-stage vectors, item 0 leftmost.
FirstStage first_stage_from_bits(const std::string& bits);
std::string to_bits(const FirstStage& x);

}  // namespace robsel
