#include "cli.h"

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "robsel/json_io.h"

namespace fs = std::filesystem;

namespace {

const std::string kData = ROBSEL_DATA_DIR;

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun result;
  result.code = robsel::cli::run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "robsel_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("validate prints a summary and the verdict") {
  const auto ok = run({"validate", kData + "/fix_c.json"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "kind C\nitems 9\nbuckets 1\nok\n");

  const fs::path bad = scratch_dir() / "bad_quota.json";
  robsel::write_text_file(bad.string(),
                          R"({"kind": "C", "gamma": 1,
    "buckets": [{"p": 3, "items": [{"C": 1, "c_lo": 0, "d": 1},
                                   {"C": 1, "c_lo": 0, "d": 1}]}]})");
  const auto invalid = run({"validate", bad.string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.out.find("violation") != std::string::npos);
}

TEST_CASE("solve reports value, witness, dual price and method") {
  const auto c = run({"solve", kData + "/fix_c.json"});
  CHECK(c.code == 0);
  CHECK(c.out == "value 8412\nx 011000000\npi_star 2100\nmethod exhaustive-dual\n");

  const auto e = run({"solve", kData + "/fix_e.json", "--decimals", "2"});
  CHECK(e.code == 0);
  CHECK(e.out == "value 5.00\nx 1\npi_star 0.00\nmethod fast-2rs-c\n");

  const auto ac = run({"solve", kData + "/fix_a_ac.json"});
  CHECK(ac.code == 0);
  CHECK(ac.out.find("method fast-2mrs-ac\n") != std::string::npos);

  const auto forced = run({"solve", kData + "/fix_e.json", "--method", "exhaustive"});
  CHECK(forced.out.find("method exhaustive-dual\n") != std::string::npos);
}

TEST_CASE("solve maps guard violations to exit 1") {
  const auto no_fast = run({"solve", kData + "/fix_d.json", "--method", "fast"});
  CHECK(no_fast.code == 1);
  CHECK(no_fast.err.find("no fast solver") != std::string::npos);

  const auto missing = run({"solve", kData + "/no_such_file.json"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("adversary prices a fixed first stage") {
  const auto open = run({"adversary", kData + "/fix_e.json", "--x", "0"});
  CHECK(open.code == 0);
  CHECK(open.out == "value 13\npi_star 0\n");

  const auto d = run({"adversary", kData + "/fix_d.json", "--x", "000111"});
  CHECK(d.code == 0);
  CHECK(d.out == "value 13\nattack 0 1 2\n");

  const auto closed = run({"adversary", kData + "/fix_d.json", "--x", "100111"});
  CHECK(closed.code == 0);
  CHECK(closed.out == "value 0\nattack -\n");
}

TEST_CASE("adversary rejects bad first stages") {
  const auto infeasible = run({"adversary", kData + "/fix_e.json", "--x", "01"});
  CHECK(infeasible.code == 1);
  const auto garbage = run({"adversary", kData + "/fix_e.json", "--x", "0a"});
  CHECK(garbage.code == 2);
}

TEST_CASE("oracle prints a certified bracket") {
  const auto e = run({"oracle", kData + "/fix_e.json", "--grid", "64"});
  CHECK(e.code == 0);
  CHECK(e.out == "lower 5\nupper 5\nx 1\n");
}

TEST_CASE("export-f writes the completion curve as CSV") {
  const fs::path csv = scratch_dir() / "fix_b_curve.csv";
  const auto res = run({"export-f", kData + "/fix_b.json", "--bucket", "0", "--out", csv.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "wrote " + csv.string() + "\n");
  CHECK(robsel::read_text_file(csv.string()) == "pi,value\n0,4\n4/3,5/3\n4,1\ntail_slope,0\n");

  CHECK(run({"export-f", kData + "/fix_d.json", "--bucket", "0", "--out", csv.string()}).code == 1);
  CHECK(run({"export-f", kData + "/fix_b.json", "--bucket", "5", "--out", csv.string()}).code == 1);
}

TEST_CASE("reduce writes the instance and its certificate") {
  const std::string prefix = (scratch_dir() / "knap").string();
  const auto knap = run({"reduce", "knapsack", kData + "/knapsack_fix_c.json", "--out", prefix});
  CHECK(knap.code == 0);
  CHECK(knap.out.find("wrote " + prefix + ".instance.json\n") != std::string::npos);
  CHECK(knap.out.find("wrote " + prefix + ".certificate.json\n") != std::string::npos);
  CHECK(knap.out.find("checks 29/29\n") != std::string::npos);
  CHECK(robsel::read_text_file(prefix + ".instance.json") ==
        robsel::read_text_file(kData + "/fix_c.json"));

  const std::string part = (scratch_dir() / "part").string();
  const auto partition =
      run({"reduce", "partition", kData + "/partition_fix_d.json", "--out", part});
  CHECK(partition.code == 0);
  CHECK(partition.out.find("checks 5/5\n") != std::string::npos);
  CHECK(robsel::read_text_file(part + ".instance.json") ==
        robsel::read_text_file(kData + "/fix_d.json"));

  const std::string asg = (scratch_dir() / "asg").string();
  const auto assignment = run({"reduce", "assignment", kData + "/fix_e.json", "--out", asg});
  CHECK(assignment.code == 0);
  CHECK(assignment.out.find("wrote " + asg + ".assignment.json\n") != std::string::npos);

  const auto bad_type = run({"reduce", "sorting", kData + "/fix_e.json"});
  CHECK(bad_type.code == 2);
}

TEST_CASE("verify passes on the bundled corpus and is deterministic") {
  const auto first = run({"verify", kData + "/fix_b.json", "--trials", "5", "--seed", "1"});
  CHECK(first.code == 0);
  CHECK(first.out.find("failures 0\n") != std::string::npos);
  const auto second = run({"verify", kData + "/fix_b.json", "--trials", "5", "--seed", "1"});
  CHECK(second.out == first.out);
  const auto reseeded = run({"verify", kData + "/fix_d.json", "--trials", "5", "--seed", "7"});
  CHECK(reseeded.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"solve", kData + "/fix_e.json", "--method", "bogus"}).code == 2);
  CHECK(run({"solve", kData + "/fix_e.json", "--frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
