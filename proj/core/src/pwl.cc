#include "robsel/pwl.h"

#include <algorithm>
#include <map>

#include "robsel/error.h"

namespace robsel::pwl {

namespace {

// Slope of the segment leaving points[k] to the right (tail after the last).
Rational slope_after(const PwlFunction& f, std::size_t k) {
  if (k + 1 == f.points.size()) return f.tail_slope;
  return (f.points[k + 1].value - f.points[k].value) /
         (f.points[k + 1].pi - f.points[k].pi);
}

void check_shape(const std::vector<Breakpoint>& points) {
  if (points.empty()) throw Error("piecewise-linear function needs at least one breakpoint");
  if (points.front().pi != 0) throw Error("first breakpoint must sit at pi = 0");
  for (std::size_t k = 1; k < points.size(); ++k)
    if (points[k - 1].pi >= points[k].pi)
      throw Error("breakpoint abscissas must be strictly increasing");
}

}  // namespace

PwlFunction make_pwl(std::vector<Breakpoint> points, Rational tail_slope) {
  check_shape(points);
  return canonicalize(PwlFunction{std::move(points), std::move(tail_slope)});
}

PwlFunction canonicalize(PwlFunction f) {
  check_shape(f.points);
  std::vector<Breakpoint> kept;
  kept.reserve(f.points.size());
  kept.push_back(f.points.front());
  for (std::size_t k = 1; k < f.points.size(); ++k) {
    const Rational left =
        (f.points[k].value - kept.back().value) / (f.points[k].pi - kept.back().pi);
    const Rational right = slope_after(f, k);
    if (left == right) continue;  // collinear with both neighbours: no kink
    kept.push_back(f.points[k]);
  }
  f.points = std::move(kept);
  return f;
}

Rational eval(const PwlFunction& f, const Rational& pi) {
  if (pi < 0) throw Error("piecewise-linear functions live on [0, inf)");
  const auto& pts = f.points;
  // Last breakpoint with abscissa <= pi.
  std::size_t lo = 0, hi = pts.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (pts[mid].pi <= pi)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (pts[lo].pi == pi) return pts[lo].value;
  const Rational slope =
      (lo + 1 < pts.size())
          ? (pts[lo + 1].value - pts[lo].value) / (pts[lo + 1].pi - pts[lo].pi)
          : f.tail_slope;
  return pts[lo].value + slope * (pi - pts[lo].pi);
}

PwlFunction sum(const std::vector<PwlFunction>& fs) {
  if (fs.empty()) throw Error("sum of zero functions");

  Rational value_at_zero = 0;
  Rational initial_slope = 0;
  Rational tail = 0;
  std::map<Rational, Rational> slope_jump;  // interior kinks: abscissa -> slope change

  for (const auto& f : fs) {
    check_shape(f.points);
    value_at_zero += f.points.front().value;
    initial_slope += slope_after(f, 0);
    tail += f.tail_slope;
    for (std::size_t k = 1; k < f.points.size(); ++k) {
      const Rational before = slope_after(f, k - 1);
      const Rational after = slope_after(f, k);
      slope_jump[f.points[k].pi] += after - before;
    }
  }

  std::vector<Breakpoint> points;
  points.push_back({Rational(0), value_at_zero});
  Rational slope = initial_slope;
  for (const auto& [pi, jump] : slope_jump) {
    const auto& prev = points.back();
    points.push_back({pi, prev.value + slope * (pi - prev.pi)});
    slope += jump;
  }
  return canonicalize(PwlFunction{std::move(points), tail});
}

PwlFunction add_linear(const PwlFunction& f, const Rational& slope) {
  PwlFunction g = f;
  for (auto& pt : g.points) pt.value += slope * pt.pi;
  g.tail_slope += slope;
  return g;  // slope differences at kinks are unchanged, so g stays canonical
}

ClipResult min_with_constant(const PwlFunction& f, const Rational& k) {
  check_shape(f.points);
  if (!is_convex(f) || f.tail_slope != 0 || slope_after(f, 0) > 0)
    throw Error("min_with_constant expects a convex nonincreasing function with a flat tail");

  const Rational& at_zero = f.points.front().value;
  const Rational& at_inf = f.points.back().value;  // flat tail: the infimum

  if (at_zero <= k) return {f, ClipOutcome::kFunctionEverywhere, std::nullopt};
  if (k <= at_inf)
    return {PwlFunction{{{Rational(0), k}}, Rational(0)}, ClipOutcome::kConstantEverywhere,
            std::nullopt};

  // f(0) > k > inf f: the crossover lies on the unique segment dropping past k.
  std::size_t seg = 0;
  while (f.points[seg + 1].value > k) ++seg;
  const Rational slope = slope_after(f, seg);
  const Rational cross = f.points[seg].pi + (k - f.points[seg].value) / slope;

  std::vector<Breakpoint> points;
  points.push_back({Rational(0), k});
  points.push_back({cross, k});  // cross > 0 since f(0) > k and f falls to reach k
  for (std::size_t t = seg + 1; t < f.points.size(); ++t)
    if (f.points[t].pi > cross) points.push_back(f.points[t]);
  PwlFunction g = canonicalize(PwlFunction{std::move(points), f.tail_slope});
  return {std::move(g), ClipOutcome::kCrossover, cross};
}

Minimum minimize(const PwlFunction& f) {
  check_shape(f.points);
  if (f.tail_slope < 0) throw Error("function is unbounded below on its tail");
  Minimum best{f.points.front().pi, f.points.front().value};
  for (const auto& pt : f.points)
    if (pt.value < best.value) best = {pt.pi, pt.value};
  return best;
}

bool is_convex(const PwlFunction& f) {
  check_shape(f.points);
  for (std::size_t k = 0; k + 1 < f.points.size(); ++k)
    if (slope_after(f, k) > slope_after(f, k + 1)) return false;
  return true;
}

std::string to_csv(const PwlFunction& f) {
  std::string out = "pi,value\n";
  for (const auto& pt : f.points)
    out += to_string(pt.pi) + "," + to_string(pt.value) + "\n";
  out += "tail_slope," + to_string(f.tail_slope) + "\n";
  return out;
}

}  // namespace robsel::pwl
