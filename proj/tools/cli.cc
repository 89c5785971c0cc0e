#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "robsel/error.h"
#include "robsel/instance.h"
#include "robsel/json_io.h"
#include "robsel/knapsack.h"
#include "robsel/oracles.h"
#include "robsel/pwl.h"
#include "robsel/rational.h"
#include "robsel/reductions.h"
#include "robsel/solvers.h"

namespace robsel::cli {
namespace {

// splitmix64; every randomized path below is reproducible from (seed, trial).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long below(long n) {
    return n <= 1 ? 0 : static_cast<long>(next() % static_cast<std::uint64_t>(n));
  }
};

std::string format_value(const Rational& value, int decimals) {
  return decimals < 0 ? to_string(value) : to_decimal_string(value, decimals);
}

Instance load_checked(const std::string& path) {
  Instance inst = load_instance(path);
  const auto violations = validate(inst);
  if (!violations.empty()) throw Error("invalid instance " + path + ": " + violations.front());
  return inst;
}

FirstStage parse_first_stage(const Instance& inst, const std::string& bits) {
  const FirstStage x = first_stage_from_bits(bits);
  const auto violations = first_stage_violations(inst, x);
  if (!violations.empty()) throw Error("infeasible first stage: " + violations.front());
  return x;
}

bool every_quota_one(const Instance& inst) {
  return std::all_of(inst.p.begin(), inst.p.end(), [](int q) { return q == 1; });
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void expect_source_keys(const nlohmann::json& node, const std::vector<std::string>& keys,
                        const std::string& path) {
  if (!node.is_object()) throw ParseError(path + ": source must be a JSON object");
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ParseError(path + ": unknown key \"" + key + "\"");
  }
  for (const auto& key : keys)
    if (!node.contains(key)) throw ParseError(path + ": missing key \"" + key + "\"");
}

std::vector<long> read_long_array(const nlohmann::json& node, const std::string& key,
                                  const std::string& path) {
  if (!node.at(key).is_array()) throw ParseError(path + ": \"" + key + "\" must be an array");
  std::vector<long> values;
  for (const auto& entry : node.at(key)) {
    if (!entry.is_number_integer())
      throw ParseError(path + ": \"" + key + "\" entries must be integers");
    values.push_back(entry.get<long>());
  }
  return values;
}

long read_long(const nlohmann::json& node, const std::string& key, const std::string& path) {
  if (!node.at(key).is_number_integer())
    throw ParseError(path + ": \"" + key + "\" must be an integer");
  return node.at(key).get<long>();
}

// ---- subcommands ----

int cmd_validate(const std::string& path, std::ostream& out) {
  const Instance inst = load_instance(path);
  out << "kind " << to_string(inst.kind) << "\n";
  out << "items " << inst.item_count() << "\n";
  out << "buckets " << inst.bucket_count() << "\n";
  const auto violations = validate(inst);
  if (violations.empty()) {
    out << "ok\n";
    return 0;
  }
  for (const auto& v : violations) out << "violation " << v << "\n";
  return 1;
}

solvers::SolveReport dispatch_solve(const Instance& inst, const std::string& method,
                                    int max_items) {
  const bool fast_fits = (inst.kind == UncertaintyKind::Continuous && every_quota_one(inst)) ||
                         inst.kind == UncertaintyKind::AltContinuous;
  if (method == "fast" || (method == "auto" && fast_fits)) {
    if (inst.kind == UncertaintyKind::AltContinuous) return solvers::solve_2mrs_ac(inst);
    if (inst.kind == UncertaintyKind::Continuous) return solvers::solve_2rs_c(inst);
    throw Error("no fast solver covers kind " + to_string(inst.kind));
  }
  return solvers::solve_exhaustive_dual(inst, max_items);
}

int cmd_solve(const std::string& path, const std::string& method, int max_items, int decimals,
              std::ostream& out) {
  const Instance inst = load_checked(path);
  const auto report = dispatch_solve(inst, method, max_items);
  out << "value " << format_value(report.value, decimals) << "\n";
  out << "x " << to_bits(report.x) << "\n";
  out << "pi_star " << (report.pi_star ? format_value(*report.pi_star, decimals) : "none")
      << "\n";
  out << "method " << report.method << "\n";
  return 0;
}

int cmd_adversary(const std::string& path, const std::string& bits, int decimals,
                  std::ostream& out) {
  const Instance inst = load_checked(path);
  const FirstStage x = parse_first_stage(inst, bits);
  const auto report = solvers::adversary_value(inst, x);
  out << "value " << format_value(report.value, decimals) << "\n";
  if (report.pi_star) out << "pi_star " << format_value(*report.pi_star, decimals) << "\n";
  if (report.attack) {
    out << "attack";
    if (report.attack->empty())
      out << " -";
    else
      for (int item : *report.attack) out << " " << item;
    out << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& path, long grid, int decimals, std::ostream& out) {
  const Instance inst = load_checked(path);
  const auto result = oracles::oracle_solve(inst, grid);
  out << "lower " << format_value(result.lower, decimals) << "\n";
  out << "upper " << format_value(result.upper, decimals) << "\n";
  out << "x " << to_bits(result.x) << "\n";
  return 0;
}

int cmd_export_f(const std::string& path, int bucket, const std::string& out_path,
                 std::ostream& out) {
  const Instance inst = load_checked(path);
  if (inst.kind != UncertaintyKind::Continuous)
    throw Error("export-f needs a Continuous instance");
  if (bucket < 0 || bucket >= inst.bucket_count())
    throw Error("bucket index " + std::to_string(bucket) + " out of range");
  const auto f = knapsack::f_breakpoints(inst, bucket);
  write_text_file(out_path, pwl::to_csv(f));
  out << "wrote " << out_path << "\n";
  return 0;
}

std::string default_prefix(const std::string& source_path) {
  const std::string suffix = ".json";
  if (source_path.size() > suffix.size() &&
      source_path.compare(source_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return source_path.substr(0, source_path.size() - suffix.size());
  return source_path;
}

int cmd_reduce(const std::string& type, const std::string& source_path,
               const std::string& out_prefix, long grid, std::ostream& out) {
  const std::string prefix = out_prefix.empty() ? default_prefix(source_path) : out_prefix;
  reductions::Certificate cert;
  std::string instance_path;
  if (type == "knapsack") {
    const auto node = parse_json_file(source_path);
    expect_source_keys(node, {"a", "v", "b"}, source_path);
    const auto red = reductions::knapsack_to_2sc(read_long_array(node, "a", source_path),
                                                 read_long_array(node, "v", source_path),
                                                 read_long(node, "b", source_path));
    cert = reductions::knapsack_certificate(red);
    instance_path = prefix + ".instance.json";
    write_text_file(instance_path, serialize_instance(red.instance));
  } else if (type == "partition") {
    const auto node = parse_json_file(source_path);
    expect_source_keys(node, {"a"}, source_path);
    const auto red = reductions::partition_to_2rsd(read_long_array(node, "a", source_path));
    cert = reductions::partition_certificate(red);
    instance_path = prefix + ".instance.json";
    write_text_file(instance_path, serialize_instance(red.instance));
  } else {
    const Instance source = load_checked(source_path);
    const auto ai = reductions::selection_to_assignment(source);
    cert = reductions::assignment_certificate(source, ai, grid);
    instance_path = prefix + ".assignment.json";
    write_text_file(instance_path, reductions::serialize_assignment(ai));
  }
  const std::string cert_path = prefix + ".certificate.json";
  write_text_file(cert_path, cert.to_json());
  out << "wrote " << instance_path << "\n";
  out << "wrote " << cert_path << "\n";
  long passed = 0;
  for (const auto& check : cert.checks) {
    if (check.pass)
      ++passed;
    else
      out << "failed " << check.name << "\n";
  }
  out << "checks " << passed << "/" << cert.checks.size() << "\n";
  return cert.all_pass() ? 0 : 1;
}

// ---- verify ----

struct VerifyStats {
  long checks = 0;
  long failures = 0;
};

void record(VerifyStats& stats, std::ostream& out, bool ok, const std::string& label) {
  ++stats.checks;
  if (!ok) {
    ++stats.failures;
    out << "failed " << label << "\n";
  }
}

FirstStage sample_first_stage(const Instance& inst, Rng& rng) {
  FirstStage x;
  x.x.assign(inst.item_count(), 0);
  for (std::size_t j = 0; j < inst.buckets.size(); ++j) {
    std::vector<int> order = inst.buckets[j];
    for (std::size_t t = order.size(); t > 1; --t)
      std::swap(order[t - 1], order[static_cast<std::size_t>(rng.below(static_cast<long>(t)))]);
    const long take = rng.below(inst.p[j] + 1);
    for (long k = 0; k < take; ++k) x.x[order[static_cast<std::size_t>(k)]] = 1;
  }
  return x;
}

Deviation sample_deviation(const Instance& inst, Rng& rng) {
  const int n = inst.item_count();
  Deviation dev;
  dev.delta.assign(n, Rational(0));
  if (inst.kind == UncertaintyKind::Discrete) {
    const Rational whole = floor(inst.gamma);
    const long budget = whole > n ? n : to_long(whole);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (std::size_t t = order.size(); t > 1; --t)
      std::swap(order[t - 1], order[static_cast<std::size_t>(rng.below(static_cast<long>(t)))]);
    long used = 0;
    for (int i : order) {
      if (used >= budget) break;
      if (rng.next() & 1u) {
        dev.delta[i] = 1;
        ++used;
      }
    }
    return dev;
  }
  Rational total = 0;
  for (int i = 0; i < n; ++i) {
    const Rational unit = rat(rng.below(17), 16);
    dev.delta[i] = inst.kind == UncertaintyKind::Continuous ? unit : unit * inst.d[i];
    total += dev.delta[i];
  }
  if (total > inst.gamma) {
    const Rational scale = inst.gamma / total;
    for (auto& entry : dev.delta) entry *= scale;
  }
  return dev;
}

int cmd_verify(const std::string& path, long trials, std::uint64_t seed, std::ostream& out) {
  const Instance inst = load_checked(path);
  const int n = inst.item_count();
  VerifyStats stats;

  // Fast solver against the exhaustive reference, where both apply.
  if (n <= 12) {
    if (inst.kind == UncertaintyKind::Continuous && every_quota_one(inst)) {
      const auto reference = solvers::solve_exhaustive_dual(inst);
      const auto fast = solvers::solve_2rs_c(inst);
      record(stats, out, fast.value == reference.value, "solver-agreement");
      record(stats, out, solvers::total_value(inst, fast.x) == fast.value, "solver-witness");
    } else if (inst.kind == UncertaintyKind::AltContinuous) {
      const auto reference = solvers::solve_exhaustive_dual(inst);
      const auto fast = solvers::solve_2mrs_ac(inst);
      record(stats, out, fast.value == reference.value, "solver-agreement");
      record(stats, out, solvers::total_value(inst, fast.x) == fast.value, "solver-witness");
    }
  }

  for (long t = 0; t < trials; ++t) {
    Rng rng(seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(t) + 1);
    const auto x = sample_first_stage(inst, rng);
    const auto report = solvers::adversary_value(inst, x);
    const std::string tag = "trial-" + std::to_string(t);
    long unselected = 0;
    for (char bit : x.x) unselected += bit ? 0 : 1;

    // No sampled scenario may beat the reported worst case.
    for (int s = 0; s < 3; ++s) {
      const auto scenario = scenario_from_deviation(inst, sample_deviation(inst, rng));
      const std::string label = tag + "-scenario-" + std::to_string(s);
      record(stats, out, contains(inst, scenario), label + "-containment");
      record(stats, out, second_stage_cost(inst, x, scenario) <= report.value,
             label + "-dominance");
    }

    if (inst.kind == UncertaintyKind::Continuous) {
      // Binary deviations within the floored budget stay feasible, so the
      // discrete worst case can never exceed the continuous one.
      Instance discrete = inst;
      discrete.kind = UncertaintyKind::Discrete;
      discrete.gamma = floor(inst.gamma);
      if (every_quota_one(inst) || unselected <= 20) {
        const auto dual = solvers::adversary_value(discrete, x);
        record(stats, out, dual.value <= report.value, tag + "-discrete-dominance");
      }

      // The dual objective must be convex across its own candidate grid.
      const auto candidates = knapsack::h_candidates(inst, x);
      std::vector<Rational> values;
      values.reserve(candidates.size());
      for (const auto& pi : candidates)
        values.push_back(inst.gamma * pi + knapsack::g_value(inst, x, pi));
      bool convex = true;
      for (std::size_t k = 0; k + 2 < candidates.size(); ++k) {
        const Rational left = (values[k + 1] - values[k]) * (candidates[k + 2] - candidates[k + 1]);
        const Rational right =
            (values[k + 2] - values[k + 1]) * (candidates[k + 1] - candidates[k]);
        if (left > right) convex = false;
      }
      record(stats, out, convex, tag + "-dual-convexity");
    }

    if (inst.kind != UncertaintyKind::Discrete && unselected <= 6) {
      long movable = 0;
      for (int i = 0; i < n; ++i)
        if (!x.x[i] && inst.d[i] > 0) ++movable;
      const long steps = movable <= 1 ? 64 : movable == 2 ? 16 : movable == 3 ? 8 : movable == 4 ? 4 : 2;
      const auto spec = oracles::make_grid_spec(inst, x, steps);
      const auto interval = oracles::adversary_grid(inst, x, spec);
      record(stats, out, interval.lower <= report.value && report.value <= interval.upper,
             tag + "-grid-containment");
    }

    if (inst.kind == UncertaintyKind::Discrete && unselected <= 20) {
      Instance floored = inst;
      floored.gamma = floor(inst.gamma);
      const auto enumerated = oracles::adversary_enum_d(floored, x);
      record(stats, out, enumerated.value == report.value, tag + "-enum-agreement");
    }
  }

  out << "trials " << trials << "\n";
  out << "checks " << stats.checks << "\n";
  out << "failures " << stats.failures << "\n";
  return stats.failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact toolkit for two-stage robust selection under budgeted uncertainty"};
  app.name("robsel");
  app.require_subcommand(1);

  std::string file, bits, method = "auto", reduce_type, out_path, out_prefix;
  int decimals = -1, bucket = 0, max_items = 20;
  long oracle_grid = 64, reduce_grid = 8, trials = 20;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check instance invariants");
  validate_cmd->add_option("file", file, "instance JSON file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "compute an optimal first stage");
  solve_cmd->add_option("file", file, "instance JSON file")->required();
  solve_cmd->add_option("--method", method, "auto, fast or exhaustive (default auto)")
      ->check(CLI::IsMember({"auto", "fast", "exhaustive"}));
  solve_cmd->add_option("--max-items", max_items, "exhaustive enumeration cap (default 20)");
  solve_cmd->add_option("--decimals", decimals, "print values rounded to this many decimals")
      ->check(CLI::NonNegativeNumber);

  auto* adversary_cmd = app.add_subcommand("adversary", "price a fixed first stage");
  adversary_cmd->add_option("file", file, "instance JSON file")->required();
  adversary_cmd->add_option("--x", bits, "first-stage bitstring")->required();
  adversary_cmd->add_option("--decimals", decimals, "print values rounded to this many decimals")
      ->check(CLI::NonNegativeNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "bracket the optimum by brute force");
  oracle_cmd->add_option("file", file, "instance JSON file")->required();
  oracle_cmd->add_option("--grid", oracle_grid, "deviation grid resolution (default 64)");
  oracle_cmd->add_option("--decimals", decimals, "print values rounded to this many decimals")
      ->check(CLI::NonNegativeNumber);

  auto* reduce_cmd = app.add_subcommand("reduce", "emit a hard instance plus certificate");
  reduce_cmd->add_option("type", reduce_type, "knapsack, partition or assignment")
      ->required()
      ->check(CLI::IsMember({"knapsack", "partition", "assignment"}));
  reduce_cmd->add_option("file", file, "source JSON file")->required();
  reduce_cmd->add_option("--out", out_prefix, "output prefix (default: source minus .json)");
  reduce_cmd->add_option("--grid", reduce_grid,
                         "assignment certificate grid resolution (default 8)");

  auto* verify_cmd = app.add_subcommand("verify", "randomized cross-checks on one instance");
  verify_cmd->add_option("file", file, "instance JSON file")->required();
  verify_cmd->add_option("--trials", trials, "number of sampled first stages (default 20)");
  verify_cmd->add_option("--seed", seed, "RNG seed (default 0)");

  auto* export_cmd = app.add_subcommand("export-f", "write one bucket's completion curve");
  export_cmd->add_option("file", file, "instance JSON file")->required();
  export_cmd->add_option("--bucket", bucket, "bucket index (0-based)")->required();
  export_cmd->add_option("--out", out_path, "output CSV path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(file, out);
    if (solve_cmd->parsed()) return cmd_solve(file, method, max_items, decimals, out);
    if (adversary_cmd->parsed()) return cmd_adversary(file, bits, decimals, out);
    if (oracle_cmd->parsed()) return cmd_oracle(file, oracle_grid, decimals, out);
    if (reduce_cmd->parsed()) return cmd_reduce(reduce_type, file, out_prefix, reduce_grid, out);
    if (verify_cmd->parsed()) return cmd_verify(file, trials, seed, out);
    if (export_cmd->parsed()) return cmd_export_f(file, bucket, out_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace robsel::cli
