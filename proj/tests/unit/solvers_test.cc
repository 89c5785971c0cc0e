#include "robsel/solvers.h"

#include <doctest.h>

#include <string>
#include <vector>

#include "rng.h"
#include "robsel/error.h"
#include "robsel/json_io.h"

using namespace robsel;

namespace {

const std::string kData = ROBSEL_DATA_DIR;

Instance load(const std::string& name) { return load_instance(kData + "/" + name); }

}  // namespace

TEST_CASE("adversary_value on continuous fixtures") {
  const Instance e = load("fix_e.json");
  const auto open = solvers::adversary_value(e, first_stage_from_bits("0"));
  CHECK(open.value == rat(13));
  REQUIRE(open.pi_star.has_value());
  CHECK(*open.pi_star == rat(0));
  CHECK(solvers::adversary_value(e, first_stage_from_bits("1")).value == rat(0));

  const Instance c = load("fix_c.json");
  const auto s7 = solvers::adversary_value(c, first_stage_from_bits("011000000"));
  CHECK(s7.value == rat(6312));
}

TEST_CASE("adversary_value floors a fractional discrete budget") {
  const Instance inst = load("fix_a_d.json");  // gamma = 3/2, one attack fits
  const auto rep = solvers::adversary_value(inst, first_stage_from_bits("00"));
  CHECK(rep.value == rat(2));
  REQUIRE(rep.attack.has_value());
  CHECK(*rep.attack == std::vector<int>({1}));
}

TEST_CASE("adversary_d allocates attacks across buckets") {
  const Instance d = load("fix_d.json");
  const auto rep = solvers::adversary_d(d, first_stage_from_bits("000111"));
  CHECK(rep.value == rat(13));
  CHECK(rep.attack == std::vector<int>({0, 1, 2}));
  REQUIRE(rep.table.alpha.size() == 4);
  CHECK(rep.table.alpha[0][0] == rat(7));   // big bucket untouched
  CHECK(rep.table.alpha[0][3] == rat(13));  // all three copies hit
  CHECK(rep.allocation[0] == 3);

  const auto via_value = solvers::adversary_value(d, first_stage_from_bits("000111"));
  CHECK(via_value.value == rat(13));
  REQUIRE(via_value.attack.has_value());
  CHECK(*via_value.attack == std::vector<int>({0, 1, 2}));
}

TEST_CASE("total_value adds the first stage") {
  const Instance e = load("fix_e.json");
  CHECK(solvers::total_value(e, first_stage_from_bits("1")) == rat(5));
  CHECK(solvers::total_value(e, first_stage_from_bits("0")) == rat(13));
}

TEST_CASE("solve_2rs_c on the single-bucket fixtures") {
  const auto e = solvers::solve_2rs_c(load("fix_e.json"));
  CHECK(e.value == rat(5));
  CHECK(to_bits(e.x) == "1");
  CHECK(e.method == "fast-2rs-c");

  const auto b = solvers::solve_2rs_c(load("fix_b.json"));
  CHECK(b.value == rat(3));
  CHECK(to_bits(b.x) == "00");
  REQUIRE(b.pi_star.has_value());
  CHECK(*b.pi_star == rat(4, 3));
}

TEST_CASE("solve_2rs_c rejects unsupported instances") {
  CHECK_THROWS_AS(solvers::solve_2rs_c(load("fix_a_d.json")), Error);
  CHECK_THROWS_AS(solvers::solve_2rs_c(load("fix_c.json")), Error);  // quota 7
}

TEST_CASE("solve_2rs_c matches the reference on seeded instances") {
  testing::Rng rng(2026);
  testing::InstanceShape shape;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = testing::random_instance(rng, shape);
    const auto fast = solvers::solve_2rs_c(inst);
    const auto slow = solvers::solve_exhaustive_dual(inst);
    CAPTURE(serialize_instance(inst));
    CHECK(fast.value == slow.value);
    CHECK(is_feasible(inst, fast.x));
    CHECK(solvers::total_value(inst, fast.x) == fast.value);
  }
}

TEST_CASE("solve_2mrs_ac matches the reference on fixtures and seeded instances") {
  const Instance ac = load("fix_a_ac.json");
  const auto fast = solvers::solve_2mrs_ac(ac);
  CHECK(fast.method == "fast-2mrs-ac");
  CHECK(fast.value == solvers::solve_exhaustive_dual(ac).value);

  testing::Rng rng(2027);
  testing::InstanceShape shape;
  shape.kind = UncertaintyKind::AltContinuous;
  shape.max_quota = 3;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_instance(rng, shape);
    const auto a = solvers::solve_2mrs_ac(inst);
    const auto b = solvers::solve_exhaustive_dual(inst);
    CAPTURE(serialize_instance(inst));
    CHECK(a.value == b.value);
    CHECK(solvers::total_value(inst, a.x) == a.value);
  }
  CHECK_THROWS_AS(solvers::solve_2mrs_ac(load("fix_b.json")), Error);
}

TEST_CASE("solve_exhaustive_dual finds the reduction optimum") {
  const auto rep = solvers::solve_exhaustive_dual(load("fix_c.json"));
  CHECK(rep.value == rat(8412));
  CHECK(to_bits(rep.x) == "011000000");
  REQUIRE(rep.pi_star.has_value());
  CHECK(*rep.pi_star == rat(2100));
  CHECK(rep.method == "exhaustive-dual");

  CHECK(solvers::solve_exhaustive_dual(load("fix_d.json")).value == rat(16));
}

TEST_CASE("solve_exhaustive_dual reports the worst scenario it found") {
  const Instance d = load("fix_d.json");
  const auto rep = solvers::solve_exhaustive_dual(d);
  REQUIRE(rep.worst_scenario.has_value());
  CHECK(contains(d, *rep.worst_scenario));
  CHECK(evaluate_total(d, rep.x, *rep.worst_scenario) == rep.value);
}

TEST_CASE("solve_exhaustive_dual prefers the lexicographically smallest optimum") {
  Instance inst;
  inst.kind = UncertaintyKind::Continuous;
  inst.gamma = rat(1);
  inst.buckets = {{0, 1}};
  inst.p = {1};
  inst.C = {rat(0), rat(0)};
  inst.c_lo = {rat(0), rat(0)};
  inst.d = {rat(0), rat(0)};
  CHECK(to_bits(solvers::solve_exhaustive_dual(inst).x) == "00");
}

TEST_CASE("solve_exhaustive_dual enforces its size guard") {
  Instance inst;
  inst.kind = UncertaintyKind::Continuous;
  inst.gamma = rat(1);
  inst.buckets.emplace_back();
  for (int i = 0; i < 21; ++i) {
    inst.buckets[0].push_back(i);
    inst.C.push_back(rat(1));
    inst.c_lo.push_back(rat(1));
    inst.d.push_back(rat(1));
  }
  inst.p = {1};
  CHECK_THROWS_AS(solvers::solve_exhaustive_dual(inst), Error);
  CHECK_NOTHROW(solvers::solve_exhaustive_dual(inst, 21));
}

TEST_CASE("ac_candidates collects the kink prices inside [0, 1]") {
  const auto cands = solvers::ac_candidates(load("fix_a_ac.json"));
  REQUIRE_FALSE(cands.empty());
  CHECK(cands.front() == rat(0));
  CHECK(cands.back() == rat(1));
  for (std::size_t i = 0; i + 1 < cands.size(); ++i) CHECK(cands[i] < cands[i + 1]);
  bool has_half = false;
  for (const auto& c : cands) has_half |= (c == rat(1, 2));
  CHECK(has_half);
}
