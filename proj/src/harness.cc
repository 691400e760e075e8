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

#include "frontierfuzz/harness.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frontierfuzz {
namespace {

inline uint8_t ByteAt(ByteSpan input, size_t pos) {
  return pos < input.size() ? input[pos] : 0;
}

OperandSpec SpecOf(const GuardNode &node) {
  return OperandSpec{node.offset, node.width, node.endian, node.is_signed};
}

// Evaluates one guard and, when `observe` is set, fills `obs`.
bool Evaluate(const GuardNode &node, ByteSpan input, bool observe,
              BranchObservation &obs) {
  Wide f = 0;
  switch (node.kind) {
    case GuardKind::kInt: {
      f = ReadOperand(input, SpecOf(node)) - node.int_constant;
      if (observe) obs.operand = SpecOf(node);
      break;
    }
    case GuardKind::kXor: {
      uint8_t acc = 0;
      for (uint32_t i = 0; i < node.length; ++i) acc ^= ByteAt(input, node.offset + i);
      f = Wide(acc) - node.int_constant;
      break;
    }
    case GuardKind::kStr: {
      const size_t n = std::max<size_t>(node.length, node.str_constant.size());
      if (observe) {
        obs.byte_diffs.resize(n);
        obs.compared_length = node.length;
      }
      for (size_t i = 0; i < n; ++i) {
        int op1 = i < node.length ? ByteAt(input, node.offset + i) : 0;
        int op2 = i < node.str_constant.size() ? node.str_constant[i] : 0;
        int d = op1 - op2;
        if (observe) obs.byte_diffs[i] = static_cast<int16_t>(d);
        if (f == 0 && d != 0) {
          f = d;
          if (!observe) break;
        }
      }
      break;
    }
    case GuardKind::kBug:
      break;
  }
  const bool outcome = Holds(node.relation, f);
  if (observe) {
    obs.site = node.id;
    obs.kind = node.kind;
    obs.outcome = outcome;
    obs.relation = node.relation;
    obs.f_value = f;
  }
  return outcome;
}

}  // namespace

Wide ReadOperand(ByteSpan input, const OperandSpec &spec) {
  uint64_t raw = 0;
  for (uint32_t i = 0; i < spec.width; ++i) {
    const uint64_t byte = ByteAt(input, spec.offset + i);
    const uint32_t shift =
        spec.endian == Endian::kLittle ? 8 * i : 8 * (spec.width - 1 - i);
    raw |= byte << shift;
  }
  if (!spec.is_signed) return Wide(raw);
  const uint32_t bits = 8 * spec.width;
  if (bits < 64 && (raw >> (bits - 1)) & 1) {
    return Wide(static_cast<int64_t>(raw)) - (Wide(1) << bits);
  }
  return Wide(static_cast<int64_t>(raw));
}

void WriteOperand(Bytes &input, const OperandSpec &spec, Wide value) {
  const size_t end = static_cast<size_t>(spec.offset) + spec.width;
  if (input.size() < end) input.resize(end, 0);
  const uint64_t raw = static_cast<uint64_t>(value);  // two's complement
  for (uint32_t i = 0; i < spec.width; ++i) {
    const uint32_t shift =
        spec.endian == Endian::kLittle ? 8 * i : 8 * (spec.width - 1 - i);
    input[spec.offset + i] = static_cast<uint8_t>(raw >> shift);
  }
}

Wide OperandMin(const OperandSpec &spec) {
  return spec.is_signed ? -(Wide(1) << (8 * spec.width - 1)) : Wide(0);
}

Wide OperandMax(const OperandSpec &spec) {
  const uint32_t bits = spec.is_signed ? 8 * spec.width - 1 : 8 * spec.width;
  return (Wide(1) << bits) - 1;
}

void Execute(const GuardProgram &program, ByteSpan input,
             const ActiveSites &active, ExecutionTrace &trace,
             TimeMode time_mode) {
  trace.Clear();
  const auto start = time_mode == TimeMode::kWallClock
                         ? std::chrono::steady_clock::now()
                         : std::chrono::steady_clock::time_point{};
  BranchObservation scratch;
  NodeId at = program.entry;
  while (at != kTerminal) {
    const GuardNode &node = program.nodes[at];
    if (!node.is_guard()) {
      trace.bug = at;
      break;
    }
    const bool observe = at < active.size() && active[at];
    bool outcome;
    if (observe) {
      trace.observations.emplace_back();
      outcome = Evaluate(node, input, true, trace.observations.back());
    } else {
      outcome = Evaluate(node, input, false, scratch);
    }
    trace.edges.push_back(outcome ? TakenEdge(at) : NotTakenEdge(at));
    at = outcome ? node.taken : node.nottaken;
  }
  if (time_mode == TimeMode::kWallClock) {
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    trace.exec_time_ns = std::max<uint64_t>(1, static_cast<uint64_t>(ns));
  } else {
    trace.exec_time_ns = 1;
  }
}

Harness::Harness(std::shared_ptr<const GuardProgram> program, TimeMode time_mode)
    : program_(std::move(program)),
      active_(program_->nodes.size(), false),
      time_mode_(time_mode) {}

absl::Status Harness::SetActiveSites(std::span<const NodeId> sites) {
  for (NodeId site : sites) {
    if (site >= program_->nodes.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown node id ", site));
    }
  }
  std::fill(active_.begin(), active_.end(), false);
  for (NodeId site : sites) active_[site] = true;
  return absl::OkStatus();
}

void Harness::Execute(ByteSpan input, ExecutionTrace &trace) const {
  frontierfuzz::Execute(*program_, input, active_, trace, time_mode_);
}

ExecutionTrace Harness::Execute(ByteSpan input) const {
  ExecutionTrace trace;
  Execute(input, trace);
  return trace;
}

}  // namespace frontierfuzz
