// Copyright 2026 The FrontierFuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "frontierfuzz/builtin_targets.h"

#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frontierfuzz {
namespace {

// u32 LE at offset 0 == "EKOJ".
constexpr std::string_view kMagic32 = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 4, "endian": "le",
     "signed": false, "relation": "eq", "constant": 1246710597,
     "taken": null, "nottaken": null}
  ]})";

// u32 BE at offset 0 == "\x7fELF".
constexpr std::string_view kMagic32Be = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 4, "endian": "be",
     "signed": false, "relation": "eq", "constant": 2135247942,
     "taken": null, "nottaken": null}
  ]})";

// 8-byte string "MAGICHDR" at offset 4.
constexpr std::string_view kMagicString = R"({
  "max_input_len": 16, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "str", "offset": 4, "length": 8, "relation": "eq",
     "constant": "TUFHSUNIRFI=", "taken": null, "nottaken": null}
  ]})";

// Six single-byte equality guards, each nested in the previous one's taken
// edge: "FRONT!".
constexpr std::string_view kNestedChain = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 1, "relation": "eq", "constant": 70, "taken": 1, "nottaken": null},
    {"id": 1, "kind": "int", "offset": 1, "width": 1, "relation": "eq", "constant": 82, "taken": 2, "nottaken": null},
    {"id": 2, "kind": "int", "offset": 2, "width": 1, "relation": "eq", "constant": 79, "taken": 3, "nottaken": null},
    {"id": 3, "kind": "int", "offset": 3, "width": 1, "relation": "eq", "constant": 78, "taken": 4, "nottaken": null},
    {"id": 4, "kind": "int", "offset": 4, "width": 1, "relation": "eq", "constant": 84, "taken": 5, "nottaken": null},
    {"id": 5, "kind": "int", "offset": 5, "width": 1, "relation": "eq", "constant": 33, "taken": null, "nottaken": null}
  ]})";

// A small header parser: integer tag, string magic, range check, trailer.
constexpr std::string_view kMixedTree = R"({
  "max_input_len": 16, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 2, "endian": "le", "relation": "eq", "constant": 19280, "taken": 1, "nottaken": 2},
    {"id": 1, "kind": "str", "offset": 2, "length": 4, "relation": "eq", "constant": "SERSMQ==", "taken": 3, "nottaken": null},
    {"id": 2, "kind": "int", "offset": 2, "width": 1, "relation": "lt", "constant": 16, "taken": null, "nottaken": null},
    {"id": 3, "kind": "int", "offset": 6, "width": 4, "endian": "be", "relation": "ge", "constant": 1000000, "taken": 4, "nottaken": null},
    {"id": 4, "kind": "str", "offset": 10, "length": 4, "relation": "eq", "constant": "RU5EIQ==", "taken": null, "nottaken": null}
  ]})";

// Xor checksum over four bytes, then a range check.
constexpr std::string_view kXorGuard = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "xor", "offset": 0, "length": 4, "relation": "eq", "constant": 90, "taken": 1, "nottaken": null},
    {"id": 1, "kind": "int", "offset": 4, "width": 1, "relation": "gt", "constant": 200, "taken": null, "nottaken": null}
  ]})";

// u16 BE magic 0xBEEF, then a range check guarding a bug.
constexpr std::string_view kBugNode = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 2, "endian": "be", "relation": "eq", "constant": 48879, "taken": 1, "nottaken": null},
    {"id": 1, "kind": "int", "offset": 2, "width": 1, "relation": "gt", "constant": 240, "taken": 2, "nottaken": null},
    {"id": 2, "kind": "bug"}
  ]})";

// Signed range checks; node 0 joins back into node 1 on both edges.
constexpr std::string_view kSignedRanges = R"({
  "max_input_len": 8, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 2, "endian": "le", "signed": true, "relation": "lt", "constant": -500, "taken": 1, "nottaken": 1},
    {"id": 1, "kind": "int", "offset": 2, "width": 4, "endian": "le", "signed": true, "relation": "gt", "constant": 100000, "taken": 2, "nottaken": null},
    {"id": 2, "kind": "int", "offset": 6, "width": 1, "relation": "le", "constant": 3, "taken": null, "nottaken": null}
  ]})";

// One-byte guard `x <= 15`.
constexpr std::string_view kLe15 = R"({
  "max_input_len": 1, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "int", "offset": 0, "width": 1, "relation": "le", "constant": 15, "taken": null, "nottaken": null}
  ]})";

// "MAGI" at offset 4 with padding bytes on both sides.
constexpr std::string_view kMagic4Str = R"({
  "max_input_len": 12, "entry": 0,
  "nodes": [
    {"id": 0, "kind": "str", "offset": 4, "length": 4, "relation": "eq", "constant": "TUFHSQ==", "taken": null, "nottaken": null}
  ]})";

constexpr BuiltinTarget kTargets[] = {
    {"magic32", kMagic32, true, true},
    {"magic32_be", kMagic32Be, true, true},
    {"magic_string", kMagicString, true, true},
    {"nested_chain", kNestedChain, true, true},
    {"mixed_tree", kMixedTree, true, true},
    {"xor_guard", kXorGuard, false, true},
    {"bug_node", kBugNode, true, true},
    {"signed_ranges", kSignedRanges, true, true},
    {"le15", kLe15, true, false},
    {"magic4_str", kMagic4Str, true, false},
};

}  // namespace

std::span<const BuiltinTarget> BuiltinTargets() { return kTargets; }

absl::StatusOr<GuardProgram> LoadBuiltin(std::string_view name) {
  for (const BuiltinTarget &t : kTargets) {
    if (t.name == name) return LoadProgram(t.document);
  }
  return absl::NotFoundError(
      absl::StrCat("no builtin target named \"", std::string(name), "\""));
}

absl::StatusOr<std::shared_ptr<const GuardProgram>> ResolveTarget(
    std::string_view spec) {
  absl::StatusOr<GuardProgram> program;
  constexpr std::string_view kPrefix = "builtin:";
  if (spec.starts_with(kPrefix)) {
    program = LoadBuiltin(spec.substr(kPrefix.size()));
  } else {
    std::ifstream in{std::string(spec)};
    if (!in) {
      return absl::NotFoundError(absl::StrCat("cannot open target ", std::string(spec)));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    program = LoadProgram(buffer.str());
  }
  if (!program.ok()) return program.status();
  return std::make_shared<const GuardProgram>(*std::move(program));
}

}  // namespace frontierfuzz
