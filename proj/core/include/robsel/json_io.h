#pragma once

#include <string>

#include "robsel/instance.h"

namespace robsel {

// Instance files:
//   {"kind": "C"|"D"|"AC", "gamma": <rational>,
//    "buckets": [{"p": <int>, "items": [{"C": <rational>, "c_lo": <rational>, "d": <rational>}]}]}
// A rational is a JSON integer or a string "p" / "p/q"; anything carrying a
// decimal point or exponent is rejected. Items receive global indices in file
// order, so buckets partition 0..n-1 contiguously.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// Canonical form: fixed key order, rationals in lowest terms. Requires the
// bucket partition to be contiguous in index order (the only shape the file
// format can express); parse(serialize(inst)) reproduces inst exactly.
std::string serialize_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// Whole-file helpers used by every tool that touches disk.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace robsel
