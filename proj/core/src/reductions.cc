#include "robsel/reductions.h"

#include <algorithm>
#include <cstdint>
#include <set>

#include <nlohmann/json.hpp>

#include "robsel/error.h"
#include "robsel/json_io.h"
#include "robsel/oracles.h"
#include "robsel/solvers.h"

namespace robsel::reductions {

namespace {

using nlohmann::ordered_json;

Check equality_check(const std::string& name, const Rational& lhs, const Rational& rhs) {
  return {name, to_string(lhs), to_string(rhs), lhs == rhs};
}

Check equality_check(const std::string& name, long lhs, long rhs) {
  return {name, std::to_string(lhs), std::to_string(rhs), lhs == rhs};
}

std::string bits_string(const std::vector<char>& bits) {
  std::string s;
  for (char b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace

bool Certificate::all_pass() const {
  for (const auto& check : checks)
    if (!check.pass) return false;
  return true;
}

std::string Certificate::to_json() const {
  ordered_json root;
  root["source"] = ordered_json::parse(source_json);
  root["instance"] = ordered_json::parse(instance_json);
  root["checks"] = ordered_json::array();
  for (const auto& check : checks) {
    ordered_json node;
    node["name"] = check.name;
    node["lhs"] = check.lhs;
    node["rhs"] = check.rhs;
    node["pass"] = check.pass;
    root["checks"].push_back(std::move(node));
  }
  root["notes"] = notes;
  return root.dump(2) + "\n";
}

KnapsackReduction knapsack_to_2sc(const std::vector<long>& sizes,
                                  const std::vector<long>& values, long capacity) {
  if (sizes.size() != values.size()) throw Error("size and value lists differ in length");
  if (sizes.empty()) throw Error("knapsack needs at least one item");
  if (capacity < 2) throw Error("knapsack capacity must be at least 2");
  long size_sum = 0, value_sum = 0;
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    if (sizes[t] < 1 || sizes[t] > capacity - 1)
      throw Error("knapsack size " + std::to_string(t) + " must lie in 1..b-1");
    if (values[t] < 0) throw Error("knapsack value " + std::to_string(t) + " must be nonnegative");
    size_sum += sizes[t];
    value_sum += values[t];
  }
  if (value_sum == 0) throw Error("knapsack values must not all be zero");

  KnapsackReduction red;
  red.sizes = sizes;
  red.values = values;
  red.capacity = capacity;
  if (size_sum % capacity != 0) {
    // Restore divisibility with a worthless item; its size stays in 1..b-1.
    red.sizes.push_back(capacity - size_sum % capacity);
    red.values.push_back(0);
    red.dummy_added = true;
    size_sum += red.sizes.back();
  }
  const long m = static_cast<long>(red.sizes.size());
  const long scaled = size_sum / capacity;  // A' = sum of a_i/b, an integer >= 1
  red.item_count = m;
  red.scaled_total = scaled;
  red.total_value = value_sum;
  red.big_m = rat(3 * m * capacity * value_sum);

  // Knapsack items keep their identity; one expensive item and a bank of
  // cheap items embed the divisibility slack. Scaled sizes a'_i = a_i/b enter
  // through the cost rates.
  Instance& inst = red.instance;
  inst.kind = UncertaintyKind::Continuous;
  inst.gamma = rat(m - scaled + 1);
  const long n = 2 * m - scaled + 3;
  for (long t = 0; t < m; ++t) {
    const Rational a_scaled = rat(red.sizes[t], capacity);
    const Rational slack = 1 - a_scaled;  // positive since a_i <= b-1
    inst.C.push_back(red.big_m * a_scaled);
    inst.c_lo.push_back(rat(red.values[t]) / slack);
    inst.d.push_back(red.big_m / slack);
  }
  inst.C.push_back((m + 3) * red.big_m);  // selecting this never pays off
  inst.c_lo.push_back(red.big_m);
  inst.d.push_back(red.big_m);
  for (long t = m + 1; t < n; ++t) {
    inst.C.push_back((m + 3) * red.big_m);
    inst.c_lo.push_back(Rational(0));
    inst.d.push_back(red.big_m);
  }
  std::vector<int> all(n);
  for (long t = 0; t < n; ++t) all[t] = static_cast<int>(t);
  inst.buckets.push_back(std::move(all));
  inst.p.push_back(static_cast<int>(2 * m - 2 * scaled + 3));
  return red;
}

FirstStage embed_knapsack_selection(const KnapsackReduction& red, const std::vector<char>& bits) {
  if (static_cast<long>(bits.size()) != red.item_count)
    throw Error("embedding needs " + std::to_string(red.item_count) + " knapsack bits");
  FirstStage x;
  x.x.assign(red.instance.item_count(), 0);
  for (std::size_t t = 0; t < bits.size(); ++t) x.x[t] = bits[t] ? 1 : 0;
  return x;
}

Rational feasible_value_formula(const KnapsackReduction& red, const std::vector<char>& bits) {
  if (static_cast<long>(bits.size()) != red.item_count)
    throw Error("formula needs " + std::to_string(red.item_count) + " knapsack bits");
  long size = 0, value = 0;
  for (std::size_t t = 0; t < bits.size(); ++t)
    if (bits[t]) {
      size += red.sizes[t];
      value += red.values[t];
    }
  if (size > red.capacity)
    throw Error("selection overfills the knapsack; the closed form covers feasible embeddings");
  return (red.instance.gamma + 1) * red.big_m + red.total_value - value;
}

Certificate knapsack_certificate(const KnapsackReduction& red) {
  Certificate cert;
  {
    ordered_json source;
    const std::size_t original = red.sizes.size() - (red.dummy_added ? 1 : 0);
    source["a"] = std::vector<long>(red.sizes.begin(), red.sizes.begin() + original);
    source["v"] = std::vector<long>(red.values.begin(), red.values.begin() + original);
    source["b"] = red.capacity;
    cert.source_json = source.dump(2) + "\n";
  }
  cert.instance_json = serialize_instance(red.instance);

  const long m = red.item_count;
  const long scaled = red.scaled_total;
  cert.checks.push_back(
      equality_check("item-count", red.instance.item_count(), 2 * m - scaled + 3));
  cert.checks.push_back(equality_check("quota", red.instance.p.at(0), 2 * m - 2 * scaled + 3));
  cert.checks.push_back(equality_check("budget", red.instance.gamma, rat(m - scaled + 1)));
  cert.checks.push_back(equality_check("cost-scale", red.big_m,
                                       rat(3 * m * red.capacity * red.total_value)));

  if (red.dummy_added)
    cert.notes.push_back("dummy item of size " + std::to_string(red.sizes.back()) +
                         " and value 0 appended to restore divisibility by the capacity");

  if (red.instance.item_count() <= 12) {
    const Rational infeasible_floor = (red.instance.gamma + 1) * red.big_m + red.total_value;
    const long quota = red.instance.p.at(0);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<char> bits(m, 0);
      long size = 0, picked = 0;
      for (long t = 0; t < m; ++t)
        if ((mask >> t) & 1u) {
          bits[t] = 1;
          size += red.sizes[t];
          ++picked;
        }
      const std::string tag = bits_string(bits);
      if (picked > quota) {
        // Not a first stage at all; soundness only needs that no feasible
        // knapsack selection is lost this way.
        cert.checks.push_back({"overfull-" + tag, std::to_string(size),
                               std::to_string(red.capacity), size > red.capacity});
        continue;
      }
      const auto x = embed_knapsack_selection(red, bits);
      const Rational value = solvers::total_value(red.instance, x);
      if (size <= red.capacity) {
        cert.checks.push_back(
            equality_check("value-" + tag, value, feasible_value_formula(red, bits)));
        const auto rep = solvers::adversary_value(red.instance, x);
        cert.checks.push_back(equality_check("dual-" + tag, *rep.pi_star, red.big_m));
      } else {
        cert.checks.push_back({"excess-" + tag, to_string(value), to_string(infeasible_floor),
                               value > infeasible_floor});
      }
    }
  } else {
    cert.notes.push_back("embedding checks skipped: instance too large to enumerate");
  }
  return cert;
}

PartitionReduction partition_to_2rsd(const std::vector<long>& values) {
  if (values.empty()) throw Error("partition needs at least one value");
  long sum = 0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] < 1) throw Error("partition value " + std::to_string(t) + " must be positive");
    sum += values[t];
  }
  if (sum % 2 != 0) throw Error("partition values must have an even sum");

  PartitionReduction red;
  red.values = values;
  red.half_sum = sum / 2;
  red.base_cost = 2 * red.half_sum + 1;
  red.blocker_cost = red.base_cost + 4 * red.half_sum + 1;
  red.threshold = rat(red.base_cost + 3 * red.half_sum);

  // One big bucket of identical items decides how much budget the adversary
  // must burn there; one singleton bucket per value carries the actual sums.
  const long n = static_cast<long>(values.size());
  Instance& inst = red.instance;
  inst.kind = UncertaintyKind::Discrete;
  inst.gamma = rat(n);
  std::vector<int> big(n);
  for (long t = 0; t < n; ++t) {
    big[t] = static_cast<int>(t);
    inst.C.push_back(rat(red.blocker_cost));
    inst.c_lo.push_back(rat(red.base_cost));
    inst.d.push_back(rat(2 * red.half_sum));
  }
  inst.buckets.push_back(std::move(big));
  inst.p.push_back(1);
  for (long t = 0; t < n; ++t) {
    inst.C.push_back(rat(values[t]));
    inst.c_lo.push_back(Rational(0));
    inst.d.push_back(rat(2 * values[t]));
    inst.buckets.push_back({static_cast<int>(n + t)});
    inst.p.push_back(1);
  }
  return red;
}

Certificate partition_certificate(const PartitionReduction& red) {
  Certificate cert;
  {
    ordered_json source;
    source["a"] = red.values;
    cert.source_json = source.dump(2) + "\n";
  }
  cert.instance_json = serialize_instance(red.instance);

  const long n = static_cast<long>(red.values.size());
  cert.checks.push_back(equality_check("item-count", red.instance.item_count(), 2 * n));
  cert.checks.push_back(equality_check("bucket-count", red.instance.bucket_count(), n + 1));
  cert.checks.push_back(equality_check("budget", red.instance.gamma, rat(n)));
  cert.checks.push_back(
      equality_check("threshold", red.threshold, rat(red.base_cost + 3 * red.half_sum)));

  std::set<long> distinct(red.values.begin(), red.values.end());
  if (distinct.size() < red.values.size())
    cert.notes.push_back("duplicate values present; the encoding keeps one item per occurrence");

  if (red.instance.item_count() <= 20) {
    const auto report = solvers::solve_exhaustive_dual(red.instance);
    const auto subset = oracles::subset_sum_bruteforce(red.values, red.half_sum);
    const std::string lhs = subset.found ? "yes" : "no";
    const std::string rhs = report.value <= red.threshold ? "yes" : "no";
    cert.checks.push_back({"half-sum-subset-iff-threshold", lhs, rhs, lhs == rhs});
    cert.notes.push_back("robust optimum " + to_string(report.value) + ", threshold " +
                         to_string(red.threshold));
  } else {
    cert.notes.push_back("threshold check skipped: instance too large to enumerate");
  }
  return cert;
}

AssignmentInstance selection_to_assignment(const Instance& inst) {
  if (inst.kind != UncertaintyKind::Continuous)
    throw Error("selection_to_assignment expects a Continuous instance");
  if (inst.bucket_count() != 1) throw Error("selection_to_assignment expects a single bucket");

  const int n = inst.item_count();
  const int quota = inst.p.at(0);
  AssignmentInstance ai;
  ai.side = 2 * n - quota;
  ai.diagonal_count = n;
  ai.gamma = inst.gamma;

  // Diagonal edges carry the item costs; padding edges are free, and only
  // item-vertex pairs get them, so p diagonal edges appear in every perfect
  // matching.
  for (int i = 0; i < n; ++i) ai.edges.push_back({i, i, inst.C[i], inst.c_lo[i], inst.d[i]});
  for (int i = 0; i < n; ++i)
    for (int r = n; r < ai.side; ++r)
      ai.edges.push_back({i, r, Rational(0), Rational(0), Rational(0)});
  for (int l = n; l < ai.side; ++l)
    for (int i = 0; i < n; ++i)
      ai.edges.push_back({l, i, Rational(0), Rational(0), Rational(0)});
  return ai;
}

std::string serialize_assignment(const AssignmentInstance& ai) {
  ordered_json root;
  root["side"] = ai.side;
  root["diagonal"] = ai.diagonal_count;
  root["gamma"] = to_string(ai.gamma);
  root["edges"] = ordered_json::array();
  for (const auto& edge : ai.edges) {
    ordered_json node;
    node["left"] = edge.left;
    node["right"] = edge.right;
    node["C"] = to_string(edge.C);
    node["c_lo"] = to_string(edge.c_lo);
    node["d"] = to_string(edge.d);
    root["edges"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

namespace {

std::vector<std::uint64_t> perfect_matchings(const AssignmentInstance& ai) {
  std::vector<std::vector<std::pair<int, int>>> adjacency(ai.side);  // left -> (right, edge)
  for (std::size_t e = 0; e < ai.edges.size(); ++e)
    adjacency[ai.edges[e].left].emplace_back(ai.edges[e].right, static_cast<int>(e));

  std::vector<std::uint64_t> matchings;
  std::uint32_t used_right = 0;
  std::uint64_t edges = 0;
  const auto walk = [&](const auto& self, int left) -> void {
    if (left == ai.side) {
      matchings.push_back(edges);
      return;
    }
    for (const auto& [right, e] : adjacency[left]) {
      if ((used_right >> right) & 1u) continue;
      used_right |= 1u << right;
      edges |= std::uint64_t(1) << e;
      self(self, left + 1);
      edges &= ~(std::uint64_t(1) << e);
      used_right &= ~(1u << right);
    }
  };
  walk(walk, 0);
  return matchings;
}

}  // namespace

AssignmentValue assignment_bruteforce(const AssignmentInstance& ai, long grid_steps) {
  if (ai.side > 6)
    throw Error("assignment_bruteforce is capped at 6 vertices per side, got " +
                std::to_string(ai.side));
  if (ai.side < 1) throw Error("assignment instance has no vertices");
  if (ai.edges.size() > 63) throw Error("assignment instance has too many edges");
  if (grid_steps < 1) throw Error("grid resolution must be at least 1");

  const auto matchings = perfect_matchings(ai);
  if (matchings.empty()) throw Error("assignment instance has no perfect matching");

  // First stages are exactly the sub-matchings of perfect matchings.
  std::set<std::uint64_t> stages;
  for (std::uint64_t pm : matchings) {
    std::uint64_t sub = pm;
    while (true) {
      stages.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & pm;
    }
  }

  bool found = false;
  AssignmentValue best;
  std::vector<int> open_diagonal;
  std::vector<Rational> rise(ai.edges.size(), Rational(0));

  for (std::uint64_t stage : stages) {
    Rational base = 0;
    for (std::size_t e = 0; e < ai.edges.size(); ++e)
      if ((stage >> e) & 1u) base += ai.edges[e].C;

    std::vector<std::uint64_t> covering;
    for (std::uint64_t pm : matchings)
      if ((pm & stage) == stage) covering.push_back(pm);

    // Only diagonal edges outside the stage can move a completion's cost.
    open_diagonal.clear();
    for (int e = 0; e < ai.diagonal_count; ++e)
      if (!((stage >> e) & 1u) && ai.edges[e].d > 0) open_diagonal.push_back(e);

    double points = 1;
    for (std::size_t t = 0; t < open_diagonal.size(); ++t)
      points *= static_cast<double>(grid_steps) + 1;
    if (points > static_cast<double>(1L << 21))
      throw Error("assignment deviation grid too large");

    const auto completion = [&]() {
      bool first = true;
      Rational cheapest;
      for (std::uint64_t pm : covering) {
        Rational cost = 0;
        const std::uint64_t extra = pm & ~stage;
        for (int e = 0; e < ai.diagonal_count; ++e)
          if ((extra >> e) & 1u) cost += ai.edges[e].c_lo + rise[e];
        if (first || cost < cheapest) {
          cheapest = cost;
          first = false;
        }
      }
      return cheapest;
    };

    Rational worst = 0;
    Rational budget = 0;
    bool have_worst = false;
    const auto attack = [&](const auto& self, std::size_t t) -> void {
      if (t == open_diagonal.size()) {
        const Rational value = completion();
        if (!have_worst || value > worst) {
          worst = value;
          have_worst = true;
        }
        return;
      }
      const int e = open_diagonal[t];
      self(self, t + 1);
      for (long step = 1; step <= grid_steps; ++step) {
        const Rational delta = rat(step, grid_steps);
        if (budget + delta > ai.gamma) break;
        budget += delta;
        rise[e] = ai.edges[e].d * delta;
        self(self, t + 1);
        budget -= delta;
      }
      rise[e] = 0;
    };
    attack(attack, 0);

    Rational bound = 0;
    if (ai.gamma > 0)
      for (int e : open_diagonal) bound += ai.edges[e].d / grid_steps;

    const Rational lower = base + worst;
    const Rational upper = lower + bound;
    if (!found || lower < best.lower) best.lower = lower;
    if (!found || upper < best.upper) best.upper = upper;
    found = true;
  }
  return best;
}

Certificate assignment_certificate(const Instance& source, const AssignmentInstance& ai,
                                   long grid_steps) {
  Certificate cert;
  cert.source_json = serialize_instance(source);
  cert.instance_json = serialize_assignment(ai);

  const int n = source.item_count();
  const int quota = source.p.at(0);
  cert.checks.push_back(equality_check("side", ai.side, 2L * n - quota));
  cert.checks.push_back(equality_check("diagonal-count", ai.diagonal_count, n));
  cert.checks.push_back(equality_check(
      "edge-count", static_cast<long>(ai.edges.size()), n + 2L * n * (ai.side - n)));

  if (ai.side <= 6) {
    const auto matchings = perfect_matchings(ai);
    int lowest = ai.side + 1, highest = -1;
    for (std::uint64_t pm : matchings) {
      int diagonal = 0;
      for (int e = 0; e < ai.diagonal_count; ++e) diagonal += (pm >> e) & 1u ? 1 : 0;
      lowest = std::min(lowest, diagonal);
      highest = std::max(highest, diagonal);
    }
    cert.checks.push_back(equality_check("diagonal-use-min", lowest, quota));
    cert.checks.push_back(equality_check("diagonal-use-max", highest, quota));

    const auto bracket = assignment_bruteforce(ai, grid_steps);
    const auto report = solvers::solve_exhaustive_dual(source);
    const bool inside = bracket.lower <= report.value && report.value <= bracket.upper;
    cert.checks.push_back({"value-bracket",
                           "[" + to_string(bracket.lower) + ", " + to_string(bracket.upper) + "]",
                           to_string(report.value), inside});
  } else {
    cert.notes.push_back("matching checks skipped: side too large to enumerate");
  }
  return cert;
}

}  // namespace robsel::reductions
