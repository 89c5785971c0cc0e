#include "robsel/instance.h"

#include <algorithm>
#include <utility>

#include "robsel/error.h"

namespace robsel {

std::string to_string(UncertaintyKind kind) {
  switch (kind) {
    case UncertaintyKind::Discrete: return "D";
    case UncertaintyKind::Continuous: return "C";
    case UncertaintyKind::AltContinuous: return "AC";
  }
  throw Error("unknown uncertainty kind");
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> issues;
  const int n = inst.item_count();
  const int m = inst.bucket_count();

  if (n == 0 || m == 0) issues.push_back("instance has no items");
  if (static_cast<int>(inst.p.size()) != m)
    issues.push_back("quota list and bucket list differ in length");
  if (static_cast<int>(inst.c_lo.size()) != n || static_cast<int>(inst.d.size()) != n)
    issues.push_back("cost vectors differ in length");

  if (!issues.empty()) return issues;  // index bookkeeping below needs consistent sizes

  std::vector<int> seen(n, 0);
  for (int j = 0; j < m; ++j) {
    if (inst.buckets[j].empty()) issues.push_back("bucket " + std::to_string(j) + " is empty");
    for (int i : inst.buckets[j]) {
      if (i < 0 || i >= n) {
        issues.push_back("bucket " + std::to_string(j) + " references item " + std::to_string(i) +
                         " outside 0.." + std::to_string(n - 1));
      } else {
        ++seen[i];
      }
    }
    if (inst.p[j] < 1 || inst.p[j] > static_cast<int>(inst.buckets[j].size()))
      issues.push_back("quota of bucket " + std::to_string(j) + " must be in 1..|bucket|, got " +
                       std::to_string(inst.p[j]));
  }
  for (int i = 0; i < n; ++i) {
    if (seen[i] == 0) issues.push_back("item " + std::to_string(i) + " belongs to no bucket");
    if (seen[i] > 1) issues.push_back("item " + std::to_string(i) + " belongs to several buckets");
  }

  for (int i = 0; i < n; ++i) {
    if (inst.C[i] < 0) issues.push_back("item " + std::to_string(i) + " has negative first-stage cost");
    if (inst.c_lo[i] < 0) issues.push_back("item " + std::to_string(i) + " has negative base cost");
    if (inst.d[i] < 0) issues.push_back("item " + std::to_string(i) + " has negative deviation");
  }
  if (inst.gamma < 0) issues.push_back("budget gamma is negative");

  return issues;
}

std::vector<std::string> first_stage_violations(const Instance& inst, const FirstStage& x) {
  std::vector<std::string> issues;
  const int n = inst.item_count();
  if (static_cast<int>(x.x.size()) != n) {
    issues.push_back("first stage has " + std::to_string(x.x.size()) + " entries, expected " +
                     std::to_string(n));
    return issues;
  }
  for (int i = 0; i < n; ++i)
    if (x.x[i] != 0 && x.x[i] != 1)
      issues.push_back("first-stage entry " + std::to_string(i) + " is not 0/1");
  for (int j = 0; j < inst.bucket_count(); ++j) {
    int count = 0;
    for (int i : inst.buckets[j]) count += x.x[i] ? 1 : 0;
    if (count > inst.p[j])
      issues.push_back("bucket " + std::to_string(j) + " selects " + std::to_string(count) +
                       " items, quota is " + std::to_string(inst.p[j]));
  }
  return issues;
}

bool is_feasible(const Instance& inst, const FirstStage& x) {
  return first_stage_violations(inst, x).empty();
}

Scenario scenario_from_deviation(const Instance& inst, const Deviation& dev) {
  const int n = inst.item_count();
  if (static_cast<int>(dev.delta.size()) != n)
    throw Error("deviation has " + std::to_string(dev.delta.size()) + " entries, expected " +
                std::to_string(n));
  Scenario s;
  s.c.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Rational& delta = dev.delta[i];
    switch (inst.kind) {
      case UncertaintyKind::Discrete:
        if (delta != 0 && delta != 1)
          throw Error("deviation " + std::to_string(i) + " must be 0 or 1, got " + to_string(delta));
        break;
      case UncertaintyKind::Continuous:
        if (delta < 0 || delta > 1)
          throw Error("deviation " + std::to_string(i) + " outside [0,1]: " + to_string(delta));
        break;
      case UncertaintyKind::AltContinuous:
        if (delta < 0 || delta > inst.d[i])
          throw Error("deviation " + std::to_string(i) + " outside [0," + to_string(inst.d[i]) +
                      "]: " + to_string(delta));
        break;
    }
    if (inst.kind == UncertaintyKind::AltContinuous)
      s.c.push_back(inst.c_lo[i] + delta);
    else
      s.c.push_back(inst.c_lo[i] + inst.d[i] * delta);
  }
  return s;
}

bool contains(const Instance& inst, const Scenario& s) {
  const int n = inst.item_count();
  if (static_cast<int>(s.c.size()) != n) return false;

  Rational total = 0;
  for (int i = 0; i < n; ++i) {
    const Rational rise = s.c[i] - inst.c_lo[i];
    if (rise < 0) return false;
    switch (inst.kind) {
      case UncertaintyKind::Discrete: {
        if (rise != 0 && rise != inst.d[i]) return false;
        if (rise != 0) {
          if (inst.d[i] == 0) return false;
          total += 1;
        }
        break;
      }
      case UncertaintyKind::Continuous: {
        if (rise > inst.d[i]) return false;
        if (rise > 0) total += rise / inst.d[i];  // d_i > 0 here since rise <= d_i
        break;
      }
      case UncertaintyKind::AltContinuous: {
        if (rise > inst.d[i]) return false;
        total += rise;
        break;
      }
    }
  }
  return total <= inst.gamma;
}

Rational second_stage_cost(const Instance& inst, const FirstStage& x, const Scenario& s) {
  const int n = inst.item_count();
  if (static_cast<int>(s.c.size()) != n) throw Error("scenario length mismatch");
  const auto issues = first_stage_violations(inst, x);
  if (!issues.empty()) throw Error("infeasible first stage: " + issues.front());

  Rational total = 0;
  std::vector<std::pair<Rational, int>> open;
  for (int j = 0; j < inst.bucket_count(); ++j) {
    int need = inst.p[j];
    open.clear();
    for (int i : inst.buckets[j]) {
      if (x.x[i])
        --need;
      else
        open.emplace_back(s.c[i], i);
    }
    if (need == 0) continue;
    std::sort(open.begin(), open.end());
    for (int t = 0; t < need; ++t) total += open[t].first;
  }
  return total;
}

Rational evaluate_total(const Instance& inst, const FirstStage& x, const Scenario& s) {
  Rational total = second_stage_cost(inst, x, s);
  for (int i = 0; i < inst.item_count(); ++i)
    if (x.x[i]) total += inst.C[i];
  return total;
}

FirstStage first_stage_from_bits(const std::string& bits) {
  FirstStage x;
  x.x.reserve(bits.size());
  for (char b : bits) {
    if (b != '0' && b != '1') throw ParseError("first-stage bitstring may contain only 0/1");
    x.x.push_back(b == '1' ? 1 : 0);
  }
  return x;
}

std::string to_bits(const FirstStage& x) {
  std::string bits;
  bits.reserve(x.x.size());
  for (char b : x.x) bits.push_back(b ? '1' : '0');
  return bits;
}

}  // namespace robsel
