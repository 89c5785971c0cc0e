#include "robsel/json_io.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "robsel/error.h"

namespace robsel {

namespace {

using nlohmann::ordered_json;

Rational rational_field(const ordered_json& node, const std::string& where) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) {
    Rational r = static_cast<long>(node.get<std::int64_t>());
    return r;
  }
  if (node.is_number())
    throw ParseError(where + ": decimal literals are not exact, write \"p/q\" instead");
  throw ParseError(where + ": expected an integer or a rational string");
}

void expect_keys(const ordered_json& node, std::initializer_list<const char*> keys,
                 const std::string& where) {
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ParseError(where + ": unknown key '" + key + "'");
  }
  for (const char* k : keys)
    if (!node.contains(k)) throw ParseError(where + ": missing key '" + k + "'");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance file must hold a JSON object");
  expect_keys(root, {"kind", "gamma", "buckets"}, "instance");

  Instance inst;
  const std::string kind = root["kind"].is_string() ? root["kind"].get<std::string>() : "";
  if (kind == "C")
    inst.kind = UncertaintyKind::Continuous;
  else if (kind == "D")
    inst.kind = UncertaintyKind::Discrete;
  else if (kind == "AC")
    inst.kind = UncertaintyKind::AltContinuous;
  else
    throw ParseError("kind must be \"C\", \"D\" or \"AC\"");

  inst.gamma = rational_field(root["gamma"], "gamma");

  if (!root["buckets"].is_array()) throw ParseError("buckets must be an array");
  int next = 0;
  for (const auto& bucket : root["buckets"]) {
    const std::string where = "bucket " + std::to_string(inst.bucket_count());
    if (!bucket.is_object()) throw ParseError(where + ": expected an object");
    expect_keys(bucket, {"p", "items"}, where);
    if (!bucket["p"].is_number_integer()) throw ParseError(where + ": quota must be an integer");
    if (!bucket["items"].is_array()) throw ParseError(where + ": items must be an array");

    std::vector<int> ids;
    for (const auto& item : bucket["items"]) {
      const std::string item_where = where + ", item " + std::to_string(next);
      if (!item.is_object()) throw ParseError(item_where + ": expected an object");
      expect_keys(item, {"C", "c_lo", "d"}, item_where);
      inst.C.push_back(rational_field(item["C"], item_where + ", C"));
      inst.c_lo.push_back(rational_field(item["c_lo"], item_where + ", c_lo"));
      inst.d.push_back(rational_field(item["d"], item_where + ", d"));
      ids.push_back(next++);
    }
    inst.buckets.push_back(std::move(ids));
    inst.p.push_back(bucket["p"].get<int>());
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_text_file(path));
}

std::string serialize_instance(const Instance& inst) {
  int next = 0;
  for (const auto& bucket : inst.buckets)
    for (int i : bucket)
      if (i != next++)
        throw Error("instance buckets must partition 0..n-1 in file order to be serialized");
  if (next != inst.item_count()) throw Error("instance buckets do not cover all items");

  ordered_json root;
  root["kind"] = to_string(inst.kind);
  root["gamma"] = to_string(inst.gamma);
  root["buckets"] = ordered_json::array();
  int id = 0;
  for (int j = 0; j < inst.bucket_count(); ++j) {
    ordered_json bucket;
    bucket["p"] = inst.p[j];
    bucket["items"] = ordered_json::array();
    for (std::size_t t = 0; t < inst.buckets[j].size(); ++t, ++id) {
      ordered_json item;
      item["C"] = to_string(inst.C[id]);
      item["c_lo"] = to_string(inst.c_lo[id]);
      item["d"] = to_string(inst.d[id]);
      bucket["items"].push_back(std::move(item));
    }
    root["buckets"].push_back(std::move(bucket));
  }
  return root.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text_file(path, serialize_instance(inst));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace robsel
