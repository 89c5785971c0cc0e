#include "robsel/instance.h"

#include <doctest.h>

#include <string>

#include "robsel/error.h"
#include "robsel/json_io.h"

using namespace robsel;

namespace {

const std::string kData = ROBSEL_DATA_DIR;

Instance fix_a_c() { return load_instance(kData + "/fix_a_c.json"); }
Instance fix_a_d() { return load_instance(kData + "/fix_a_d.json"); }
Instance fix_a_ac() { return load_instance(kData + "/fix_a_ac.json"); }
Instance fix_b() { return load_instance(kData + "/fix_b.json"); }
Instance fix_c() { return load_instance(kData + "/fix_c.json"); }

Scenario scen(std::initializer_list<Rational> costs) {
  Scenario s;
  s.c.assign(costs);
  return s;
}

}  // namespace

TEST_CASE("validate accepts the bundled fixtures") {
  CHECK(validate(fix_a_c()).empty());
  CHECK(validate(fix_b()).empty());
  CHECK(validate(fix_c()).empty());
}

TEST_CASE("validate reports quota out of range") {
  Instance inst = fix_b();
  inst.p[0] = 3;  // bucket holds 2 items
  const auto violations = validate(inst);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].find("quota") != std::string::npos);
}

TEST_CASE("validate reports a broken partition") {
  Instance inst = fix_b();
  inst.buckets = {{0}, {0, 1}};
  inst.p = {1, 1};
  CHECK_FALSE(validate(inst).empty());

  inst.buckets = {{0}};
  inst.p = {1};
  CHECK_FALSE(validate(inst).empty());  // item 1 uncovered
}

TEST_CASE("validate rejects empty instances and negative data") {
  Instance inst;
  CHECK_FALSE(validate(inst).empty());

  inst = fix_b();
  inst.d[1] = rat(-1);
  CHECK_FALSE(validate(inst).empty());

  inst = fix_b();
  inst.gamma = rat(-1, 2);
  CHECK_FALSE(validate(inst).empty());
}

TEST_CASE("first stage feasibility is a per-bucket cap") {
  const Instance inst = fix_b();
  CHECK(is_feasible(inst, first_stage_from_bits("00")));
  CHECK(is_feasible(inst, first_stage_from_bits("10")));
  CHECK_FALSE(is_feasible(inst, first_stage_from_bits("11")));
  CHECK_FALSE(first_stage_violations(inst, first_stage_from_bits("110")).empty());
}

TEST_CASE("scenario_from_deviation applies the kind's cost rule") {
  Deviation dev;
  dev.delta = {rat(1), rat(1, 2)};
  const Scenario sc = scenario_from_deviation(fix_a_c(), dev);
  CHECK(sc.c[0] == rat(4));
  CHECK(sc.c[1] == rat(5, 2));

  dev.delta = {rat(2), rat(2)};
  const Scenario sa = scenario_from_deviation(fix_a_ac(), dev);
  CHECK(sa.c[0] == rat(4));
  CHECK(sa.c[1] == rat(3));

  dev.delta = {rat(2), rat(0)};
  CHECK_THROWS_AS(scenario_from_deviation(fix_a_c(), dev), Error);
  dev.delta = {rat(1, 2), rat(0)};
  CHECK_THROWS_AS(scenario_from_deviation(fix_a_d(), dev), Error);
}

TEST_CASE("contains separates the three uncertainty sets") {
  // Kind C: budget 3/2 over fractional deviations.
  CHECK(contains(fix_a_c(), scen({rat(4), rat(5, 2)})));
  CHECK_FALSE(contains(fix_a_c(), scen({rat(7, 2), rat(4)})));
  // Kind D: deviations are all or nothing.
  CHECK_FALSE(contains(fix_a_d(), scen({rat(4), rat(5, 2)})));
  CHECK(contains(fix_a_d(), scen({rat(2), rat(4)})));
  // Kind AC: additive deviations up to d_i, budget 4.
  CHECK(contains(fix_a_ac(), scen({rat(4), rat(3)})));
  CHECK_FALSE(contains(fix_a_ac(), scen({rat(9, 2), rat(1)})));
}

TEST_CASE("second_stage_cost completes each bucket greedily") {
  const Instance b = fix_b();
  Scenario nominal;
  nominal.c = {b.c_lo[0], b.c_lo[1]};
  CHECK(second_stage_cost(b, first_stage_from_bits("00"), nominal) == rat(1));
  CHECK(second_stage_cost(b, first_stage_from_bits("10"), nominal) == rat(0));
  CHECK(evaluate_total(b, first_stage_from_bits("10"), nominal) == rat(10));

  const Instance c = fix_c();
  Scenario low;
  low.c = c.c_lo;
  const FirstStage s7 = first_stage_from_bits("011000000");
  CHECK(second_stage_cost(c, s7, low) == rat(21, 5));

  CHECK_THROWS_AS(second_stage_cost(b, first_stage_from_bits("11"), nominal), Error);
}

TEST_CASE("bit strings round trip") {
  const FirstStage x = first_stage_from_bits("0110");
  CHECK(x.x == std::vector<char>({0, 1, 1, 0}));
  CHECK(to_bits(x) == "0110");
  CHECK_THROWS_AS(first_stage_from_bits("01x0"), ParseError);
}
