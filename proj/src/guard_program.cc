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

#include "frontierfuzz/guard_program.h"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/escaping.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace frontierfuzz {
namespace {

using nlohmann::json;

std::string_view KindName(GuardKind kind) {
  switch (kind) {
    case GuardKind::kInt:
      return "int";
    case GuardKind::kStr:
      return "str";
    case GuardKind::kXor:
      return "xor";
    case GuardKind::kBug:
      return "bug";
  }
  return "?";
}

absl::Status FieldError(size_t index, std::string_view field,
                        std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("nodes[", index, "].", std::string(field), ": ",
                   std::string(what)));
}

absl::StatusOr<uint64_t> GetUnsigned(const json &obj, size_t index,
                                     std::string_view field) {
  auto it = obj.find(field);
  if (it == obj.end()) return FieldError(index, field, "missing");
  if (!it->is_number_integer() || (it->is_number_integer() &&
                                   !it->is_number_unsigned() &&
                                   it->get<int64_t>() < 0)) {
    return FieldError(index, field, "expected a non-negative integer");
  }
  return it->get<uint64_t>();
}

// Reads a child reference: an integer node id, or null for "exit".
absl::StatusOr<NodeId> GetChild(const json &obj, size_t index,
                                std::string_view field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return kTerminal;
  if (!it->is_number_unsigned()) {
    return FieldError(index, field, "expected a node id or null");
  }
  uint64_t v = it->get<uint64_t>();
  if (v >= kTerminal) return FieldError(index, field, "node id out of range");
  return static_cast<NodeId>(v);
}

absl::StatusOr<GuardNode> ParseNode(const json &obj, size_t index) {
  if (!obj.is_object()) return FieldError(index, "", "expected an object");
  GuardNode node;
  auto id = GetUnsigned(obj, index, "id");
  if (!id.ok()) return id.status();
  node.id = static_cast<NodeId>(*id);

  auto kind_it = obj.find("kind");
  if (kind_it == obj.end() || !kind_it->is_string()) {
    return FieldError(index, "kind", "expected \"int\", \"str\", \"xor\" or \"bug\"");
  }
  const std::string kind = kind_it->get<std::string>();
  if (kind == "int") {
    node.kind = GuardKind::kInt;
  } else if (kind == "str") {
    node.kind = GuardKind::kStr;
  } else if (kind == "xor") {
    node.kind = GuardKind::kXor;
  } else if (kind == "bug") {
    node.kind = GuardKind::kBug;
    return node;
  } else {
    return FieldError(index, "kind", absl::StrCat("unknown kind \"", kind, "\""));
  }

  auto offset = GetUnsigned(obj, index, "offset");
  if (!offset.ok()) return offset.status();
  node.offset = static_cast<uint32_t>(*offset);

  if (node.kind == GuardKind::kInt) {
    auto width = GetUnsigned(obj, index, "width");
    if (!width.ok()) return width.status();
    node.width = static_cast<uint32_t>(*width);
    if (auto it = obj.find("signed"); it != obj.end()) {
      if (!it->is_boolean()) return FieldError(index, "signed", "expected a bool");
      node.is_signed = it->get<bool>();
    }
    if (auto it = obj.find("endian"); it != obj.end()) {
      if (*it == "le") {
        node.endian = Endian::kLittle;
      } else if (*it == "be") {
        node.endian = Endian::kBig;
      } else {
        return FieldError(index, "endian", "expected \"le\" or \"be\"");
      }
    }
  } else {
    auto length = GetUnsigned(obj, index, "length");
    if (!length.ok()) return length.status();
    node.length = static_cast<uint32_t>(*length);
  }

  auto rel_it = obj.find("relation");
  if (rel_it == obj.end() || !rel_it->is_string()) {
    return FieldError(index, "relation", "missing");
  }
  auto relation = ParseRelation(rel_it->get<std::string>());
  if (!relation) {
    return FieldError(index, "relation", "expected one of lt|le|gt|ge|eq|ne");
  }
  node.relation = *relation;

  auto c_it = obj.find("constant");
  if (c_it == obj.end()) return FieldError(index, "constant", "missing");
  if (node.kind == GuardKind::kStr) {
    if (!c_it->is_string()) {
      return FieldError(index, "constant", "expected a base64 string");
    }
    std::string decoded;
    if (!absl::Base64Unescape(c_it->get<std::string>(), &decoded)) {
      return FieldError(index, "constant", "invalid base64");
    }
    node.str_constant.assign(decoded.begin(), decoded.end());
  } else if (c_it->is_number_unsigned()) {
    node.int_constant = Wide(c_it->get<uint64_t>());
  } else if (c_it->is_number_integer()) {
    node.int_constant = Wide(c_it->get<int64_t>());
  } else {
    return FieldError(index, "constant", "expected an integer");
  }

  auto taken = GetChild(obj, index, "taken");
  if (!taken.ok()) return taken.status();
  auto nottaken = GetChild(obj, index, "nottaken");
  if (!nottaken.ok()) return nottaken.status();
  node.taken = *taken;
  node.nottaken = *nottaken;
  return node;
}

// 1-based line and column of byte offset `pos` in `text`.
std::string Position(std::string_view text, size_t pos) {
  pos = std::min(pos, text.size());
  size_t line = 1, column = 1;
  for (size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return absl::StrCat("line ", line, ", column ", column);
}

}  // namespace

size_t GuardProgram::guard_edge_count() const {
  return 2 * static_cast<size_t>(std::count_if(
                 nodes.begin(), nodes.end(),
                 [](const GuardNode &n) { return n.is_guard(); }));
}

NodeId GuardProgram::EdgeTarget(EdgeId edge) const {
  const GuardNode &n = nodes[EdgeSource(edge)];
  return (edge & 1u) ? n.nottaken : n.taken;
}

absl::Status ValidateProgram(const GuardProgram &program) {
  const size_t n = program.nodes.size();
  if (n == 0) return absl::InvalidArgumentError("program has no nodes");
  if (program.max_input_len == 0) {
    return absl::InvalidArgumentError("max_input_len must be positive");
  }
  if (program.entry >= n) {
    return absl::InvalidArgumentError(
        absl::StrCat("entry ", program.entry, " does not name a node"));
  }
  if (!program.nodes[program.entry].is_guard()) {
    return absl::InvalidArgumentError("entry must be a guard, not a bug node");
  }
  for (size_t i = 0; i < n; ++i) {
    const GuardNode &node = program.nodes[i];
    const std::string where = absl::StrCat("node ", i);
    if (node.id != i) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": ids must be dense 0..n-1 (found id ", node.id, ")"));
    }
    if (!node.is_guard()) continue;
    if (node.kind == GuardKind::kInt && node.width != 1 && node.width != 2 &&
        node.width != 4 && node.width != 8) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": width must be 1, 2, 4 or 8"));
    }
    if (node.kind != GuardKind::kInt && node.length == 0) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": length must be positive"));
    }
    if (static_cast<size_t>(node.offset) + node.span() > program.max_input_len) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": operand window [", node.offset, ", ",
                       node.offset + node.span(), ") exceeds max_input_len ",
                       program.max_input_len));
    }
    if (node.kind == GuardKind::kXor &&
        (node.int_constant < 0 || node.int_constant > 255)) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": xor constant must fit one byte"));
    }
    for (NodeId child : {node.taken, node.nottaken}) {
      if (child != kTerminal && child >= n) {
        return absl::InvalidArgumentError(
            absl::StrCat(where, ": dangling child id ", child));
      }
    }
  }
  // Cycle check by iterative DFS colouring.
  std::vector<uint8_t> colour(n, 0);  // 0 white, 1 grey, 2 black
  for (size_t root = 0; root < n; ++root) {
    if (colour[root]) continue;
    std::vector<std::pair<NodeId, int>> stack{{static_cast<NodeId>(root), 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto &[v, next] = stack.back();
      const GuardNode &node = program.nodes[v];
      if (!node.is_guard() || next == 2) {
        colour[v] = 2;
        stack.pop_back();
        continue;
      }
      NodeId child = next++ == 0 ? node.taken : node.nottaken;
      if (child == kTerminal || colour[child] == 2) continue;
      if (colour[child] == 1) {
        return absl::InvalidArgumentError(
            absl::StrCat("node ", v, ": child ", child, " closes a cycle"));
      }
      colour[child] = 1;
      stack.push_back({child, 0});
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<GuardProgram> LoadProgram(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error &e) {
    return absl::InvalidArgumentError(
        absl::StrCat("parse error at ", Position(document, e.byte ? e.byte - 1 : 0),
                     ": ", e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("document must be a JSON object");
  }
  GuardProgram program;
  auto max_len = doc.find("max_input_len");
  if (max_len == doc.end() || !max_len->is_number_unsigned()) {
    return absl::InvalidArgumentError("max_input_len: expected a non-negative integer");
  }
  program.max_input_len = max_len->get<size_t>();
  auto entry = doc.find("entry");
  if (entry == doc.end() || !entry->is_number_unsigned()) {
    return absl::InvalidArgumentError("entry: expected a node id");
  }
  program.entry = entry->get<NodeId>();
  auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array()) {
    return absl::InvalidArgumentError("nodes: expected an array");
  }
  std::vector<GuardNode> parsed;
  for (size_t i = 0; i < nodes->size(); ++i) {
    auto node = ParseNode((*nodes)[i], i);
    if (!node.ok()) return node.status();
    parsed.push_back(*std::move(node));
  }
  // Nodes may be listed in any order; ids must still be dense.
  program.nodes.resize(parsed.size());
  std::vector<bool> seen(parsed.size(), false);
  for (GuardNode &node : parsed) {
    if (node.id >= parsed.size() || seen[node.id]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", node.id, ": ids must be unique and dense 0..", parsed.size() - 1));
    }
    seen[node.id] = true;
    program.nodes[node.id] = std::move(node);
  }
  if (absl::Status s = ValidateProgram(program); !s.ok()) return s;
  return program;
}

std::string ProgramToJson(const GuardProgram &program) {
  json nodes = json::array();
  for (const GuardNode &node : program.nodes) {
    json obj = {{"id", node.id}, {"kind", KindName(node.kind)}};
    if (node.is_guard()) {
      obj["offset"] = node.offset;
      if (node.kind == GuardKind::kInt) {
        obj["width"] = node.width;
        obj["endian"] = node.endian == Endian::kLittle ? "le" : "be";
        obj["signed"] = node.is_signed;
      } else {
        obj["length"] = node.length;
      }
      obj["relation"] = RelationName(node.relation);
      if (node.kind == GuardKind::kStr) {
        obj["constant"] = absl::Base64Escape(absl::string_view(
            reinterpret_cast<const char *>(node.str_constant.data()),
            node.str_constant.size()));
      } else if (node.int_constant < 0) {
        obj["constant"] = static_cast<int64_t>(node.int_constant);
      } else {
        obj["constant"] = static_cast<uint64_t>(node.int_constant);
      }
      obj["taken"] = node.taken == kTerminal ? json(nullptr) : json(node.taken);
      obj["nottaken"] =
          node.nottaken == kTerminal ? json(nullptr) : json(node.nottaken);
    }
    nodes.push_back(std::move(obj));
  }
  json doc = {{"max_input_len", program.max_input_len},
              {"entry", program.entry},
              {"nodes", std::move(nodes)}};
  return doc.dump(2);
}

}  // namespace frontierfuzz
