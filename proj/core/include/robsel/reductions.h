#pragma once

#include <string>
#include <vector>

#include "robsel/instance.h"

namespace robsel::reductions {

struct Check {
  std::string name;
  std::string lhs, rhs;  // exact values of both sides, rendered as text
  bool pass = false;
};

// Self-contained record of a reduction run: the source problem, the produced
// instance (both as JSON text) and the identities that were checked. A check
// only passes when the recomputed sides actually agree.
struct Certificate {
  std::string source_json;
  std::string instance_json;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool all_pass() const;
  std::string to_json() const;
};

struct KnapsackReduction {
  std::vector<long> sizes;   // post-normalization (dummy appended if needed)
  std::vector<long> values;
  long capacity = 0;
  bool dummy_added = false;
  long item_count = 0;        // m, post-normalization
  long scaled_total = 0;      // A' = sum sizes / capacity
  long total_value = 0;       // V
  Rational big_m;             // M = 3 m b V, the cost scale
  Instance instance;          // Continuous, single bucket
};

// Encodes a max-value knapsack as a Continuous selection instance whose
// robust optimum determines the knapsack optimum. Requires 1 <= a_i <= b-1
// and at least one positive value; a zero-value dummy item is appended when
// the sizes do not sum to a multiple of the capacity.
KnapsackReduction knapsack_to_2sc(const std::vector<long>& sizes,
                                  const std::vector<long>& values, long capacity);

// First stage of the reduced instance holding the given knapsack bits
// (length m, post-normalization); items beyond the encoded ones stay off.
FirstStage embed_knapsack_selection(const KnapsackReduction& red, const std::vector<char>& bits);

// Closed-form robust value of a feasible embedding:
// (gamma + 1) * M + V - sum of selected knapsack values.
Rational feasible_value_formula(const KnapsackReduction& red, const std::vector<char>& bits);

// Checks the construction arithmetic and, when the instance is small enough
// to enumerate, the embedding identities for every knapsack bit pattern.
Certificate knapsack_certificate(const KnapsackReduction& red);

struct PartitionReduction {
  std::vector<long> values;
  long half_sum = 0;        // Q
  long base_cost = 0;       // M = 2Q + 1, nominal cost in the big bucket
  long blocker_cost = 0;    // W = M + 4Q + 1, first-stage price never worth paying
  Rational threshold;       // M + 3Q: optimum <= threshold iff a half-sum subset exists
  Instance instance;        // Discrete, quota-1 buckets
};

// Encodes an even-sum partition question as a Discrete selection instance
// with a yes/no threshold on the robust optimum.
PartitionReduction partition_to_2rsd(const std::vector<long>& values);

Certificate partition_certificate(const PartitionReduction& red);

struct AssignmentEdge {
  int left = 0, right = 0;
  Rational C, c_lo, d;
};

// Bipartite two-stage assignment instance; the first side carries the items,
// both sides are padded to 2n - p vertices and non-diagonal edges cost zero,
// so every perfect matching uses exactly p diagonal edges.
struct AssignmentInstance {
  int side = 0;            // vertices per side
  int diagonal_count = 0;  // n, edges that carry the item costs
  Rational gamma;
  std::vector<AssignmentEdge> edges;
};

// Single-bucket Continuous selection instance -> equivalent assignment
// instance (matching costs under the same budgeted uncertainty).
AssignmentInstance selection_to_assignment(const Instance& inst);

std::string serialize_assignment(const AssignmentInstance& ai);

struct AssignmentValue {
  Rational lower, upper;  // certified bracket of the robust assignment value
};

// Enumerates first-stage partial matchings and perfect-matching completions,
// bracketing the adversary on a deviation grid. Requires side <= 6.
AssignmentValue assignment_bruteforce(const AssignmentInstance& ai, long grid_steps);

Certificate assignment_certificate(const Instance& source, const AssignmentInstance& ai,
                                   long grid_steps);

}  // namespace robsel::reductions
