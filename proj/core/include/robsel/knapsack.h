#pragma once

#include <utility>
#include <vector>

#include "robsel/instance.h"
#include "robsel/pwl.h"

namespace robsel::knapsack {

enum class Tier { Low, High };

// One of the two pieces an item contributes to the completion knapsack at a
// fixed dual price pi. A Low piece costs at rate c_lo_i, a High piece at rate
// c_hi_i; cost is always rate * size, so the greedy ratio is the rate itself
// and never depends on pi.
struct KnapItem {
  int item = 0;
  Tier tier = Tier::Low;
  Rational size;
  Rational cost;
  Rational ratio;
};

// Piece identities (item, tier) sorted by (ratio, item index, Low before
// High). Valid for every pi over the same index set, which is what makes the
// breakpoint sweep and the candidate scan reuse one sort.
struct GreedyOrder {
  std::vector<std::pair<int, Tier>> order;
};

GreedyOrder build_greedy_order(const Instance& inst, const std::vector<int>& items);

// The two pieces per listed item at dual price pi, Low then High per item.
// Continuous/Discrete cost structure: Low size min(1, pi/d_i) (1 when
// d_i = 0), High size the complement. AltContinuous: sizes pi and 1 - pi
// uniformly, pi must lie in [0, 1].
std::vector<KnapItem> items_at(const Instance& inst, const std::vector<int>& items,
                               const Rational& pi);

struct GreedyResult {
  Rational value;
  std::vector<Rational> fraction;  // taken fraction per entry of `items`
};

// Continuous min-cost knapsack: fill exactly `capacity` total size, scanning
// `order` and taking each piece fully until only a fraction fits. Order
// entries absent from `items` are skipped, so a full-bucket order can price a
// sub-instance. Requires capacity <= total available size.
GreedyResult greedy_min_knapsack(const std::vector<KnapItem>& items, const GreedyOrder& order,
                                 const Rational& capacity);

// Sum over buckets of the cheapest completion at dual price pi for Continuous
// instances: per bucket a continuous min-knapsack over the unselected items
// with capacity p_j minus the selected count. Requires x feasible, pi >= 0.
Rational g_value(const Instance& inst, const FirstStage& x, const Rational& pi);

// As g_value with per-bucket greedy orders precomputed over full buckets.
Rational g_value_with_orders(const Instance& inst, const std::vector<GreedyOrder>& orders,
                             const FirstStage& x, const Rational& pi);

// Completion-cost curve of a quota-1 bucket as a function of the dual price:
// f_j(pi) = min cost to fill capacity 1 from the bucket's pieces. Piecewise
// linear, convex, nonincreasing, constant beyond the largest breakpoint.
pwl::PwlFunction f_breakpoints(const Instance& inst, int bucket);

// Finite superset of the breakpoints of pi -> g_value(inst, x, pi): zero,
// every unselected d_i, and every solution of "a greedy-order prefix fills
// the bucket capacity exactly" on the intervals where piece sizes are linear
// in pi. Sorted, deduplicated. Evaluating g + gamma*pi on these points is
// exact because the true function is convex piecewise linear.
std::vector<Rational> h_candidates(const Instance& inst, const FirstStage& x);

}  // namespace robsel::knapsack
