#include "robsel/json_io.h"

#include <doctest.h>

#include <string>
#include <vector>

#include "robsel/error.h"

using namespace robsel;

namespace {

const std::string kData = ROBSEL_DATA_DIR;

const std::vector<std::string> kInstanceFiles = {
    "fix_a_c.json", "fix_a_d.json", "fix_a_ac.json", "fix_b.json",
    "fix_c.json",   "fix_d.json",   "fix_e.json",
};

}  // namespace

TEST_CASE("load_instance reads the exact rationals") {
  const Instance inst = load_instance(kData + "/fix_c.json");
  CHECK(inst.kind == UncertaintyKind::Continuous);
  CHECK(inst.gamma == rat(3));
  REQUIRE(inst.bucket_count() == 1);
  CHECK(inst.p[0] == 7);
  REQUIRE(inst.item_count() == 9);
  CHECK(inst.c_lo[2] == rat(49, 3));
  CHECK(inst.C[4] == rat(14700));
  CHECK(inst.d[8] == rat(2100));
}

TEST_CASE("serialize then parse is the identity on canonical files") {
  for (const auto& name : kInstanceFiles) {
    CAPTURE(name);
    const std::string text = read_text_file(kData + "/" + name);
    const Instance inst = parse_instance(text);
    CHECK(serialize_instance(inst) == text);
  }
}

TEST_CASE("integer gamma literals are accepted") {
  const std::string text = R"({"kind": "C", "gamma": 2,
    "buckets": [{"p": 1, "items": [{"C": 1, "c_lo": 0, "d": "1/2"}]}]})";
  CHECK(parse_instance(text).gamma == rat(2));
}

TEST_CASE("decimal literals are rejected as inexact") {
  const std::string text = R"({"kind": "C", "gamma": 1.5,
    "buckets": [{"p": 1, "items": [{"C": 1, "c_lo": 0, "d": 1}]}]})";
  bool threw = false;
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("decimal literals are not exact") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("unknown and missing keys are parse errors") {
  CHECK_THROWS_AS(parse_instance(R"({"kind": "C", "gamma": 1, "buckets": [], "extra": 0})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"kind": "C", "buckets": []})"), ParseError);
  CHECK_THROWS_AS(
      parse_instance(
          R"({"kind": "C", "gamma": 1, "buckets": [{"p": 1, "items": [{"C": 1, "c_lo": 0}]}]})"),
      ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"kind": "X", "gamma": 1, "buckets": []})"), ParseError);
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
}

TEST_CASE("serialize_instance requires a contiguous partition") {
  Instance inst = load_instance(kData + "/fix_b.json");
  inst.buckets = {{1}, {0}};
  inst.p = {1, 1};
  CHECK_THROWS_AS(serialize_instance(inst), Error);
}
