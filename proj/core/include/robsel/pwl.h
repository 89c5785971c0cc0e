#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robsel/rational.h"

namespace robsel::pwl {

struct Breakpoint {
  Rational pi;
  Rational value;
};

// Continuous piecewise-linear function on [0, inf): straight segments between
// consecutive breakpoints, then a ray of slope tail_slope after the last one.
// Canonical form: first breakpoint at pi = 0, abscissas strictly increasing,
// no breakpoint where the left and right slopes agree.
struct PwlFunction {
  std::vector<Breakpoint> points;
  Rational tail_slope;
};

// Builds a canonical function; points must be nonempty, start at pi = 0 and
// have strictly increasing abscissas.
PwlFunction make_pwl(std::vector<Breakpoint> points, Rational tail_slope);

// Drops breakpoints that do not change the slope. Idempotent.
PwlFunction canonicalize(PwlFunction f);

Rational eval(const PwlFunction& f, const Rational& pi);

// Pointwise sum; exact, result canonical.
PwlFunction sum(const std::vector<PwlFunction>& fs);

// f(pi) + slope * pi.
PwlFunction add_linear(const PwlFunction& f, const Rational& slope);

enum class ClipOutcome {
  kFunctionEverywhere,  // f <= k on [0, inf): the minimum is f itself
  kConstantEverywhere,  // k <= inf f: the minimum is the constant k
  kCrossover,           // f(0) > k > inf f: constant left of the crossover, f right
};

struct ClipResult {
  PwlFunction g;
  ClipOutcome outcome;
  std::optional<Rational> crossover;
};

// Pointwise min of f and the constant k, for convex nonincreasing f with a
// flat tail. The crossover is the smallest abscissa with f = k when both
// regions are nonempty; the boundary case f(0) = k counts as function-only.
ClipResult min_with_constant(const PwlFunction& f, const Rational& k);

struct Minimum {
  Rational pi;  // smallest minimizer
  Rational value;
};

// Global minimum over [0, inf); requires tail_slope >= 0 (else unbounded).
// The function need not be convex: every breakpoint is inspected.
Minimum minimize(const PwlFunction& f);

// Slopes nondecreasing left to right, tail included.
bool is_convex(const PwlFunction& f);

// Header "pi,value", one row per breakpoint, final row "tail_slope,<slope>".
std::string to_csv(const PwlFunction& f);

}  // namespace robsel::pwl
