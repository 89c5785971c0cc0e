#include "robsel/solvers.h"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "robsel/error.h"
#include "robsel/knapsack.h"
#include "robsel/oracles.h"
#include "robsel/pwl.h"

namespace robsel::solvers {

namespace {

void require_feasible(const Instance& inst, const FirstStage& x) {
  const auto issues = first_stage_violations(inst, x);
  if (!issues.empty()) throw Error("infeasible first stage: " + issues.front());
}

Rational first_stage_cost(const Instance& inst, const FirstStage& x) {
  Rational total = 0;
  for (int i = 0; i < inst.item_count(); ++i)
    if (x.x[i]) total += inst.C[i];
  return total;
}

std::vector<knapsack::GreedyOrder> full_bucket_orders(const Instance& inst) {
  std::vector<knapsack::GreedyOrder> orders;
  orders.reserve(inst.bucket_count());
  for (int j = 0; j < inst.bucket_count(); ++j)
    orders.push_back(knapsack::build_greedy_order(inst, inst.buckets[j]));
  return orders;
}

// Smallest minimizer of gamma*pi + completion over the candidate prices.
// Exact: the scanned function is piecewise linear with kinks only at
// candidates, so segment interiors never beat both endpoints.
AdversaryReport dual_scan(const Instance& inst, const FirstStage& x,
                          const std::vector<Rational>& candidates) {
  const auto orders = full_bucket_orders(inst);
  AdversaryReport rep;
  bool first = true;
  for (const Rational& pi : candidates) {
    const Rational value =
        inst.gamma * pi + knapsack::g_value_with_orders(inst, orders, x, pi);
    if (first || value < rep.value) {
      rep.value = value;
      rep.pi_star = pi;
      first = false;
    }
  }
  return rep;
}

long clamped_budget(const Instance& inst) {
  const Rational whole = floor(inst.gamma);
  if (whole <= 0) return 0;
  if (whole > inst.item_count()) return inst.item_count();
  return to_long(whole);
}

DiscreteAdversary adversary_d_impl(const Instance& inst, const FirstStage& x, long budget) {
  const int m = inst.bucket_count();
  DiscreteAdversary out;
  out.table.alpha.assign(m, {});
  std::vector<std::vector<int>> open_sorted(m);

  for (int j = 0; j < m; ++j) {
    auto& alpha = out.table.alpha[j];
    alpha.assign(budget + 1, Rational(0));

    std::vector<std::pair<Rational, int>> open;
    int selected = 0;
    for (int i : inst.buckets[j]) {
      if (x.x[i])
        ++selected;
      else
        open.emplace_back(inst.c_lo[i], i);
    }
    if (selected >= inst.p[j]) continue;  // quota met: attacks change nothing

    std::sort(open.begin(), open.end());
    for (const auto& [cost, id] : open) open_sorted[j].push_back(id);
    const long size = static_cast<long>(open.size());

    // alpha(g): attack the g cheapest by base cost. Residual cost is the
    // cheaper of the best attacked item at c_hi and the best spared item at
    // c_lo; once everything is attacked only c_hi remains.
    Rational attacked_min;
    bool has_attacked = false;
    for (long g = 0; g <= budget; ++g) {
      const long used = std::min(g, size);
      if (used > 0) {
        const int id = open[used - 1].second;
        const Rational hi = inst.c_hi(id);
        attacked_min = has_attacked ? std::min(attacked_min, hi) : hi;
        has_attacked = true;
      }
      if (used < size)
        alpha[g] = has_attacked ? std::min(attacked_min, open[used].first) : open[used].first;
      else
        alpha[g] = attacked_min;  // nonempty: quota unmet means open items exist
    }
  }

  // Split the budget across buckets; residual costs are additive. Smaller
  // per-bucket shares win ties so attacks never pad beyond the open items.
  std::vector<Rational> best(budget + 1, Rational(0));
  std::vector<std::vector<long>> picked(m, std::vector<long>(budget + 1, 0));
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> next(budget + 1);
    for (long g = 0; g <= budget; ++g) {
      bool first = true;
      for (long t = 0; t <= g; ++t) {
        const Rational value = best[g - t] + out.table.alpha[j][t];
        if (first || value > next[g]) {
          next[g] = value;
          picked[j][g] = t;
          first = false;
        }
      }
    }
    best = std::move(next);
  }

  out.value = best[budget];
  out.allocation.assign(m, 0);
  long remaining = budget;
  for (int j = m - 1; j >= 0; --j) {
    const long t = picked[j][remaining];
    out.allocation[j] = static_cast<int>(t);
    remaining -= t;
  }
  for (int j = 0; j < m; ++j) {
    const long used = std::min<long>(out.allocation[j], open_sorted[j].size());
    for (long t = 0; t < used; ++t) out.attack.push_back(open_sorted[j][t]);
  }
  std::sort(out.attack.begin(), out.attack.end());
  return out;
}

// ---- AltContinuous bucket DP ----------------------------------------------

struct AcBucketResult {
  Rational value;
  std::vector<char> x_bits;  // aligned with the bucket's item list
};

// Per-item choices at a fixed dual price pi: skip, first stage (size 1),
// low piece (size pi), high piece (size 1-pi), or both pieces. One guessed
// piece may end up fractional and is costed by the leftover capacity. States
// count the three integral size classes; zero-size pieces are dropped.
AcBucketResult ac_bucket_solve(const Instance& inst, int j, const Rational& pi, bool want_x) {
  const auto& ids = inst.buckets[j];
  const int nj = static_cast<int>(ids.size());
  const int quota = inst.p[j];
  const Rational s_lo = pi;
  const Rational s_hi = 1 - pi;
  const bool use_lo = s_lo > 0;
  const bool use_hi = s_hi > 0;

  const int extent_a = quota + 1, extent_b = nj + 1, extent_c = nj + 1;
  const int states = extent_a * extent_b * extent_c;
  const auto at = [&](int a, int b, int c) { return (a * extent_b + b) * extent_c + c; };

  // Size of the z-pieces per (b, c); a state is dead once a + that exceeds
  // the quota, since completion only adds size.
  std::vector<Rational> bc_size(extent_b * extent_c);
  for (int b = 0; b < extent_b; ++b)
    for (int c = 0; c < extent_c; ++c)
      bc_size[b * extent_c + c] = b * s_lo + c * s_hi;
  std::vector<char> dead(states);
  for (int a = 0; a < extent_a; ++a)
    for (int b = 0; b < extent_b; ++b)
      for (int c = 0; c < extent_c; ++c)
        dead[at(a, b, c)] = bc_size[b * extent_c + c] > quota - a ? 1 : 0;

  struct Guess {
    int slot;  // -1: nothing fractional
    knapsack::Tier tier;
  };
  std::vector<Guess> guesses;
  guesses.push_back({-1, knapsack::Tier::Low});
  for (int t = 0; t < nj; ++t) {
    if (use_lo) guesses.push_back({t, knapsack::Tier::Low});
    if (use_hi) guesses.push_back({t, knapsack::Tier::High});
  }

  enum Choice : std::uint8_t { kSkip = 0, kFirst, kLow, kHigh, kBoth };

  std::vector<Rational> cost(states);
  std::vector<char> live(states);
  std::vector<std::uint8_t> trace;

  const auto run_guess = [&](const Guess& guess, bool record) {
    std::fill(live.begin(), live.end(), 0);
    live[at(0, 0, 0)] = 1;
    cost[at(0, 0, 0)] = 0;
    if (record) trace.assign(static_cast<std::size_t>(nj) * states, kSkip);

    for (int t = 0; t < nj; ++t) {
      const int i = ids[t];
      const Rational cost_lo = inst.c_lo[i] * s_lo;
      const Rational cost_hi = inst.c_hi(i) * s_hi;
      const auto relax = [&](int src, int tgt, const Rational& add, Choice choice) {
        if (!live[src]) return;
        const Rational candidate = cost[src] + add;
        if (live[tgt] && cost[tgt] <= candidate) return;
        live[tgt] = 1;
        cost[tgt] = candidate;
        if (record) trace[static_cast<std::size_t>(t) * states + tgt] = choice;
      };
      // Descending sweep: every source has strictly smaller counters, so it
      // still holds the value from before this item.
      for (int a = extent_a - 1; a >= 0; --a) {
        for (int b = extent_b - 1; b >= 0; --b) {
          for (int c = extent_c - 1; c >= 0; --c) {
            const int tgt = at(a, b, c);
            if (dead[tgt]) continue;
            if (t == guess.slot) {
              // Fractional candidate: integral use of the other tier only.
              if (guess.tier == knapsack::Tier::Low && use_hi && c >= 1)
                relax(at(a, b, c - 1), tgt, cost_hi, kHigh);
              if (guess.tier == knapsack::Tier::High && use_lo && b >= 1)
                relax(at(a, b - 1, c), tgt, cost_lo, kLow);
            } else {
              if (a >= 1) relax(at(a - 1, b, c), tgt, inst.C[i], kFirst);
              if (use_lo && b >= 1) relax(at(a, b - 1, c), tgt, cost_lo, kLow);
              if (use_hi && c >= 1) relax(at(a, b, c - 1), tgt, cost_hi, kHigh);
              if (use_lo && use_hi && b >= 1 && c >= 1)
                relax(at(a, b - 1, c - 1), tgt, cost_lo + cost_hi, kBoth);
            }
          }
        }
      }
    }
  };

  bool found = false;
  Rational best_value;
  Guess best_guess{-1, knapsack::Tier::Low};
  int best_state = -1;

  for (const Guess& guess : guesses) {
    run_guess(guess, false);
    const Rational frac_size = guess.slot < 0 ? Rational(0)
                               : guess.tier == knapsack::Tier::Low ? s_lo
                                                                   : s_hi;
    const Rational frac_rate =
        guess.slot < 0 ? Rational(0)
        : guess.tier == knapsack::Tier::Low ? inst.c_lo[ids[guess.slot]]
                                            : inst.c_hi(ids[guess.slot]);
    for (int a = 0; a < extent_a; ++a) {
      for (int b = 0; b < extent_b; ++b) {
        for (int c = 0; c < extent_c; ++c) {
          const int s = at(a, b, c);
          if (!live[s]) continue;
          const Rational size = a + bc_size[b * extent_c + c];
          Rational candidate;
          if (guess.slot < 0) {
            if (size != quota) continue;
            candidate = cost[s];
          } else {
            if (size + frac_size < quota) continue;  // even a full piece falls short
            candidate = cost[s] + frac_rate * (quota - size);
          }
          if (!found || candidate < best_value) {
            found = true;
            best_value = candidate;
            best_guess = guess;
            best_state = s;
          }
        }
      }
    }
  }
  if (!found) throw Error("bucket cannot meet its quota");  // unreachable on valid instances

  AcBucketResult result;
  result.value = best_value;
  if (want_x) {
    run_guess(best_guess, true);
    result.x_bits.assign(nj, 0);
    int a = best_state / (extent_b * extent_c);
    int b = (best_state / extent_c) % extent_b;
    int c = best_state % extent_c;
    for (int t = nj - 1; t >= 0; --t) {
      const Choice choice =
          static_cast<Choice>(trace[static_cast<std::size_t>(t) * states + at(a, b, c)]);
      switch (choice) {
        case kSkip: break;
        case kFirst: result.x_bits[t] = 1; --a; break;
        case kLow: --b; break;
        case kHigh: --c; break;
        case kBoth: --b; --c; break;
      }
    }
  }
  return result;
}

}  // namespace

std::vector<Rational> ac_candidates(const Instance& inst) {
  std::vector<Rational> candidates;
  candidates.push_back(Rational(0));
  candidates.push_back(Rational(1));
  for (int j = 0; j < inst.bucket_count(); ++j) {
    const int quota = inst.p[j];
    const int nj = static_cast<int>(inst.buckets[j].size());
    for (int a = 0; a <= quota; ++a)
      for (int b = 0; a + b <= quota; ++b)
        for (int c = b + 1; c <= nj; ++c) {
          const Rational pi = rat(quota - a - b, c - b);
          if (pi <= 1) candidates.push_back(pi);
        }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

AdversaryReport adversary_value(const Instance& inst, const FirstStage& x) {
  require_feasible(inst, x);
  switch (inst.kind) {
    case UncertaintyKind::Continuous:
      return dual_scan(inst, x, knapsack::h_candidates(inst, x));
    case UncertaintyKind::AltContinuous:
      return dual_scan(inst, x, ac_candidates(inst));
    case UncertaintyKind::Discrete: {
      if (inst.gamma < 0) throw Error("budget gamma is negative");
      bool representative = true;
      for (int p : inst.p) representative = representative && p == 1;
      AdversaryReport rep;
      if (representative) {
        auto res = adversary_d_impl(inst, x, clamped_budget(inst));
        rep.value = std::move(res.value);
        rep.attack = std::move(res.attack);
      } else {
        // Binary deviations make a fractional budget equivalent to its floor.
        oracles::DiscreteAttack res;
        if (is_integer(inst.gamma)) {
          res = oracles::adversary_enum_d(inst, x);
        } else {
          Instance floored = inst;
          floored.gamma = floor(inst.gamma);
          res = oracles::adversary_enum_d(floored, x);
        }
        rep.value = std::move(res.value);
        rep.attack = std::move(res.attack);
      }
      return rep;
    }
  }
  throw Error("unknown uncertainty kind");
}

DiscreteAdversary adversary_d(const Instance& inst, const FirstStage& x) {
  if (inst.kind != UncertaintyKind::Discrete)
    throw Error("adversary_d expects a Discrete instance");
  for (int p : inst.p)
    if (p != 1) throw Error("adversary_d expects quota-1 buckets");
  if (!is_integer(inst.gamma)) throw Error("discrete budget must be an integer");
  if (inst.gamma < 0) throw Error("budget gamma is negative");
  require_feasible(inst, x);
  return adversary_d_impl(inst, x, clamped_budget(inst));
}

Rational total_value(const Instance& inst, const FirstStage& x) {
  return first_stage_cost(inst, x) + adversary_value(inst, x).value;
}

SolveReport solve_2rs_c(const Instance& inst) {
  if (inst.kind != UncertaintyKind::Continuous)
    throw Error("solve_2rs_c expects a Continuous instance");
  for (int p : inst.p)
    if (p != 1) throw Error("solve_2rs_c expects quota-1 buckets");

  const int m = inst.bucket_count();
  struct BucketPlan {
    pwl::ClipOutcome outcome;
    std::optional<Rational> crossover;
    int cheapest;
  };
  std::vector<BucketPlan> plans;
  plans.reserve(m);
  std::vector<pwl::PwlFunction> parts;
  parts.reserve(m);

  for (int j = 0; j < m; ++j) {
    int cheapest = inst.buckets[j].front();
    for (int i : inst.buckets[j])
      if (inst.C[i] < inst.C[cheapest]) cheapest = i;
    auto clip = pwl::min_with_constant(knapsack::f_breakpoints(inst, j), inst.C[cheapest]);
    plans.push_back({clip.outcome, clip.crossover, cheapest});
    parts.push_back(std::move(clip.g));
  }

  const pwl::PwlFunction objective = pwl::add_linear(pwl::sum(parts), inst.gamma);
  const pwl::Minimum best = pwl::minimize(objective);

  FirstStage x;
  x.x.assign(inst.item_count(), 0);
  for (int j = 0; j < m; ++j) {
    const auto& plan = plans[j];
    const bool first_stage =
        plan.outcome == pwl::ClipOutcome::kConstantEverywhere ||
        (plan.outcome == pwl::ClipOutcome::kCrossover && *plan.crossover >= best.pi);
    if (first_stage) x.x[plan.cheapest] = 1;
  }

  SolveReport report;
  report.value = best.value;
  report.x = std::move(x);
  report.pi_star = best.pi;
  report.method = "fast-2rs-c";
  return report;
}

SolveReport solve_2mrs_ac(const Instance& inst) {
  if (inst.kind != UncertaintyKind::AltContinuous)
    throw Error("solve_2mrs_ac expects an AltContinuous instance");

  const auto candidates = ac_candidates(inst);
  bool first = true;
  Rational best_value;
  Rational best_pi;
  for (const Rational& pi : candidates) {
    Rational total = inst.gamma * pi;
    for (int j = 0; j < inst.bucket_count(); ++j)
      total += ac_bucket_solve(inst, j, pi, false).value;
    if (first || total < best_value) {
      best_value = total;
      best_pi = pi;
      first = false;
    }
  }

  FirstStage x;
  x.x.assign(inst.item_count(), 0);
  Rational replay = inst.gamma * best_pi;
  for (int j = 0; j < inst.bucket_count(); ++j) {
    const auto bucket = ac_bucket_solve(inst, j, best_pi, true);
    replay += bucket.value;
    for (std::size_t t = 0; t < inst.buckets[j].size(); ++t)
      if (bucket.x_bits[t]) x.x[inst.buckets[j][t]] = 1;
  }
  if (replay != best_value) throw Error("dual replay drifted from the scanned optimum");

  SolveReport report;
  report.value = best_value;
  report.x = std::move(x);
  report.pi_star = best_pi;
  report.method = "fast-2mrs-ac";
  return report;
}

SolveReport solve_exhaustive_dual(const Instance& inst, int max_items) {
  const int n = inst.item_count();
  if (n > max_items)
    throw Error("instance has " + std::to_string(n) + " items; exhaustive enumeration is capped at " +
                std::to_string(max_items) + " (raise max_items to accept the blowup)");

  std::vector<int> bucket_of(n, -1);
  for (int j = 0; j < inst.bucket_count(); ++j)
    for (int i : inst.buckets[j]) bucket_of[i] = j;
  for (int i = 0; i < n; ++i)
    if (bucket_of[i] < 0) throw Error("item " + std::to_string(i) + " belongs to no bucket");

  Scenario nominal;
  nominal.c = inst.c_lo;

  FirstStage current;
  current.x.assign(n, 0);
  std::vector<int> picked(inst.bucket_count(), 0);
  Rational spent = 0;

  bool found = false;
  SolveReport best;
  AdversaryReport best_rep;

  const auto visit = [&](const auto& self, int i) -> void {
    if (found && spent >= best.value) return;  // first-stage costs only grow deeper
    if (i == n) {
      const Rational floor_value = spent + second_stage_cost(inst, current, nominal);
      if (found && floor_value >= best.value) return;
      AdversaryReport rep = adversary_value(inst, current);
      const Rational value = spent + rep.value;
      if (!found || value < best.value) {
        found = true;
        best.value = value;
        best.x = current;
        best_rep = std::move(rep);
      }
      return;
    }
    self(self, i + 1);  // the 0 branch first keeps the scan lexicographic
    const int j = bucket_of[i];
    if (picked[j] < inst.p[j]) {
      current.x[i] = 1;
      ++picked[j];
      spent += inst.C[i];
      self(self, i + 1);
      spent -= inst.C[i];
      --picked[j];
      current.x[i] = 0;
    }
  };
  visit(visit, 0);

  if (!found) throw Error("no feasible first stage");  // unreachable on valid instances
  best.pi_star = best_rep.pi_star;
  if (best_rep.attack) {
    Deviation dev;
    dev.delta.assign(n, Rational(0));
    for (int i : *best_rep.attack) dev.delta[i] = 1;
    best.worst_scenario = scenario_from_deviation(inst, dev);
  }
  best.method = "exhaustive-dual";
  return best;
}

}  // namespace robsel::solvers
