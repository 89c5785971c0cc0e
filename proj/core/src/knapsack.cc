#include "robsel/knapsack.h"

#include <algorithm>
#include <tuple>

#include "robsel/error.h"

namespace robsel::knapsack {

namespace {

void require_valid_pi(const Instance& inst, const Rational& pi) {
  if (pi < 0) throw Error("dual price must be nonnegative");
  if (inst.kind == UncertaintyKind::AltContinuous && pi > 1)
    throw Error("dual price must lie in [0, 1] for AltContinuous instances");
}

std::vector<int> unselected_in(const Instance& inst, const FirstStage& x, int bucket) {
  std::vector<int> ids;
  for (int i : inst.buckets[bucket])
    if (!x.x[i]) ids.push_back(i);
  return ids;
}

}  // namespace

GreedyOrder build_greedy_order(const Instance& inst, const std::vector<int>& items) {
  std::vector<std::tuple<Rational, int, int>> keyed;  // (ratio, item, tier rank)
  keyed.reserve(items.size() * 2);
  for (int i : items) {
    keyed.emplace_back(inst.c_lo[i], i, 0);
    keyed.emplace_back(inst.c_hi(i), i, 1);
  }
  std::sort(keyed.begin(), keyed.end());
  GreedyOrder order;
  order.order.reserve(keyed.size());
  for (const auto& [ratio, item, tier] : keyed)
    order.order.emplace_back(item, tier == 0 ? Tier::Low : Tier::High);
  return order;
}

std::vector<KnapItem> items_at(const Instance& inst, const std::vector<int>& items,
                               const Rational& pi) {
  require_valid_pi(inst, pi);
  std::vector<KnapItem> pieces;
  pieces.reserve(items.size() * 2);
  for (int i : items) {
    Rational low_size;
    if (inst.kind == UncertaintyKind::AltContinuous)
      low_size = pi;
    else
      low_size = (inst.d[i] == 0 || pi >= inst.d[i]) ? Rational(1) : pi / inst.d[i];
    const Rational high_size = 1 - low_size;
    pieces.push_back({i, Tier::Low, low_size, inst.c_lo[i] * low_size, inst.c_lo[i]});
    pieces.push_back({i, Tier::High, high_size, inst.c_hi(i) * high_size, inst.c_hi(i)});
  }
  return pieces;
}

GreedyResult greedy_min_knapsack(const std::vector<KnapItem>& items, const GreedyOrder& order,
                                 const Rational& capacity) {
  if (capacity < 0) throw Error("knapsack capacity must be nonnegative");

  // Identity -> position among the supplied pieces; order entries without a
  // piece are skipped.
  std::vector<std::tuple<int, int, std::size_t>> index;
  index.reserve(items.size());
  for (std::size_t t = 0; t < items.size(); ++t)
    index.emplace_back(items[t].item, items[t].tier == Tier::Low ? 0 : 1, t);
  std::sort(index.begin(), index.end());

  GreedyResult result;
  result.value = 0;
  result.fraction.assign(items.size(), Rational(0));
  Rational remaining = capacity;

  for (const auto& [item, tier] : order.order) {
    if (remaining == 0) break;
    const auto key = std::make_tuple(item, tier == Tier::Low ? 0 : 1, std::size_t{0});
    auto it = std::lower_bound(index.begin(), index.end(), key);
    if (it == index.end() || std::get<0>(*it) != item ||
        std::get<1>(*it) != (tier == Tier::Low ? 0 : 1))
      continue;
    const KnapItem& piece = items[std::get<2>(*it)];
    if (piece.size == 0) continue;
    if (piece.size <= remaining) {
      result.fraction[std::get<2>(*it)] = 1;
      result.value += piece.cost;
      remaining -= piece.size;
    } else {
      const Rational fraction = remaining / piece.size;
      result.fraction[std::get<2>(*it)] = fraction;
      result.value += piece.cost * fraction;
      remaining = 0;
    }
  }
  if (remaining > 0) throw Error("knapsack capacity exceeds the total piece size");
  return result;
}

namespace {

Rational completion_value(const Instance& inst, const std::vector<GreedyOrder>& orders,
                          const FirstStage& x, const Rational& pi) {
  Rational total = 0;
  for (int j = 0; j < inst.bucket_count(); ++j) {
    const std::vector<int> open = unselected_in(inst, x, j);
    const int need = inst.p[j] - static_cast<int>(inst.buckets[j].size() - open.size());
    if (need <= 0) continue;
    const auto pieces = items_at(inst, open, pi);
    total += greedy_min_knapsack(pieces, orders[j], Rational(need)).value;
  }
  return total;
}

std::vector<GreedyOrder> full_bucket_orders(const Instance& inst) {
  std::vector<GreedyOrder> orders;
  orders.reserve(inst.bucket_count());
  for (int j = 0; j < inst.bucket_count(); ++j)
    orders.push_back(build_greedy_order(inst, inst.buckets[j]));
  return orders;
}

void require_feasible(const Instance& inst, const FirstStage& x) {
  const auto issues = first_stage_violations(inst, x);
  if (!issues.empty()) throw Error("infeasible first stage: " + issues.front());
}

}  // namespace

Rational g_value(const Instance& inst, const FirstStage& x, const Rational& pi) {
  if (inst.kind != UncertaintyKind::Continuous)
    throw Error("g_value is defined for Continuous instances");
  require_feasible(inst, x);
  return g_value_with_orders(inst, full_bucket_orders(inst), x, pi);
}

Rational g_value_with_orders(const Instance& inst, const std::vector<GreedyOrder>& orders,
                             const FirstStage& x, const Rational& pi) {
  return completion_value(inst, orders, x, pi);
}

pwl::PwlFunction f_breakpoints(const Instance& inst, int bucket) {
  if (bucket < 0 || bucket >= inst.bucket_count()) throw Error("bucket index out of range");
  if (inst.p[bucket] != 1) throw Error("f_breakpoints expects a quota-1 bucket");
  if (inst.kind == UncertaintyKind::AltContinuous)
    throw Error("f_breakpoints uses the Continuous cost structure");

  const GreedyOrder order = build_greedy_order(inst, inst.buckets[bucket]);

  // Walk the order until the first piece of fixed size 1 ("blocker"): a Low
  // with d = 0 or any High with d > 0. For pi below the accumulated Low
  // capacities, the greedy fills capacity 1 from the scanned Lows; each
  // prefix of r Lows is optimal on [1/S1_r, 1/S1_{r-1}], giving value
  // Sc_r / S1_r at pi = 1/S1_r with S1 = sum 1/d, Sc = sum c_lo/d. Beyond all
  // Low breakpoints the blocker's rate is the constant value at pi near 0.
  Rational s1 = 0, sc = 0;
  std::vector<pwl::Breakpoint> descending;
  Rational at_zero;
  bool blocked = false;
  for (const auto& [item, tier] : order.order) {
    if (tier == Tier::Low) {
      if (inst.d[item] == 0) {
        at_zero = inst.c_lo[item];
        blocked = true;
        break;
      }
      s1 += 1 / Rational(inst.d[item]);
      sc += inst.c_lo[item] / inst.d[item];
      descending.push_back({1 / s1, sc / s1});
    } else if (inst.d[item] > 0) {
      at_zero = inst.c_hi(item);
      blocked = true;
      break;
    }
    // A High with d = 0 has size 0 at every pi and never fills anything.
  }
  if (!blocked)
    throw Error("bucket has no piece of fixed size; cannot fill capacity 1 at pi = 0");

  std::vector<pwl::Breakpoint> points;
  points.push_back({Rational(0), at_zero});
  for (auto it = descending.rbegin(); it != descending.rend(); ++it) points.push_back(*it);
  return pwl::make_pwl(std::move(points), Rational(0));
}

std::vector<Rational> h_candidates(const Instance& inst, const FirstStage& x) {
  if (inst.kind != UncertaintyKind::Continuous)
    throw Error("h_candidates is defined for Continuous instances");
  require_feasible(inst, x);

  std::vector<Rational> candidates;
  candidates.push_back(Rational(0));

  for (int j = 0; j < inst.bucket_count(); ++j) {
    const std::vector<int> open = unselected_in(inst, x, j);
    const int need = inst.p[j] - static_cast<int>(inst.buckets[j].size() - open.size());
    for (int i : open)
      if (inst.d[i] > 0) candidates.push_back(inst.d[i]);
    if (need <= 0 || open.empty()) continue;

    const GreedyOrder order = build_greedy_order(inst, open);

    // Interval boundaries where some piece size formula kinks.
    std::vector<Rational> bounds;
    bounds.push_back(Rational(0));
    for (int i : open)
      if (inst.d[i] > 0) bounds.push_back(inst.d[i]);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    // On [lo, hi] every prefix size is A + B*pi; a prefix that fills the
    // capacity exactly marks a potential change of the greedy's split piece.
    for (std::size_t b = 0; b < bounds.size(); ++b) {
      const Rational lo = bounds[b];
      const bool last = b + 1 == bounds.size();
      const Rational hi = last ? Rational(0) : bounds[b + 1];

      Rational fixed = 0, coeff = 0;
      for (const auto& [item, tier] : order.order) {
        const bool saturated = inst.d[item] == 0 || inst.d[item] <= lo;
        if (tier == Tier::Low) {
          if (saturated)
            fixed += 1;
          else
            coeff += 1 / Rational(inst.d[item]);
        } else {
          if (!saturated) {
            fixed += 1;
            coeff -= 1 / Rational(inst.d[item]);
          }
        }
        if (coeff != 0) {
          const Rational solution = (need - fixed) / coeff;
          if (solution >= lo && (last || solution <= hi)) candidates.push_back(solution);
        }
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

}  // namespace robsel::knapsack
