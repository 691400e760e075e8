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

// Guard programs: executable synthetic targets built from a declarative JSON
// document. A program is a DAG of comparison guards; each guard owns two
// edges, `2 * id` (taken) and `2 * id + 1` (not taken).

#ifndef FRONTIERFUZZ_GUARD_PROGRAM_H_
#define FRONTIERFUZZ_GUARD_PROGRAM_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

enum class GuardKind : uint8_t {
  kInt,  // integer operand read from the input vs. an integer constant
  kStr,  // byte string read from the input vs. a constant byte string
  kXor,  // xor of an input span vs. a one-byte constant
  kBug,  // terminal node; reaching it is a finding
};

enum class Endian : uint8_t { kLittle, kBig };

struct GuardNode {
  NodeId id = 0;
  GuardKind kind = GuardKind::kInt;
  uint32_t offset = 0;
  uint32_t width = 0;   // kInt: 1, 2, 4 or 8
  uint32_t length = 0;  // kStr / kXor: span length
  Endian endian = Endian::kLittle;
  bool is_signed = false;
  Relation relation = Relation::kEq;
  Wide int_constant = 0;  // kInt / kXor
  Bytes str_constant;     // kStr
  NodeId taken = kTerminal;
  NodeId nottaken = kTerminal;

  bool is_guard() const { return kind != GuardKind::kBug; }
  // Number of input bytes the guard reads.
  uint32_t span() const { return kind == GuardKind::kInt ? width : length; }

  friend bool operator==(const GuardNode &, const GuardNode &) = default;
};

struct GuardProgram {
  std::vector<GuardNode> nodes;  // indexed by id
  NodeId entry = 0;
  size_t max_input_len = 0;

  size_t edge_space() const { return 2 * nodes.size(); }
  // Number of edges that can ever be covered (two per guard).
  size_t guard_edge_count() const;
  const GuardNode &node(NodeId id) const { return nodes[id]; }
  // Target node of `edge`, or kTerminal.
  NodeId EdgeTarget(EdgeId edge) const;

  friend bool operator==(const GuardProgram &, const GuardProgram &) = default;
};

// Parses and validates a target document. Parse errors carry the line and
// column; validation errors name the offending node and field.
absl::StatusOr<GuardProgram> LoadProgram(std::string_view document);

// Checks every structural invariant of `program`.
absl::Status ValidateProgram(const GuardProgram &program);

// Inverse of LoadProgram (modulo whitespace and field order).
std::string ProgramToJson(const GuardProgram &program);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_GUARD_PROGRAM_H_
