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

// In-process execution of guard programs. A run yields the exact edge path
// plus, for every active guard it passes through, the comparison feedback
// (outcome, relation, operand difference) that compiler instrumentation
// would report for a real binary.

#ifndef FRONTIERFUZZ_HARNESS_H_
#define FRONTIERFUZZ_HARNESS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "frontierfuzz/guard_program.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

// Location and encoding of an integer operand inside the input.
struct OperandSpec {
  uint32_t offset = 0;
  uint32_t width = 0;
  Endian endian = Endian::kLittle;
  bool is_signed = false;

  friend bool operator==(const OperandSpec &, const OperandSpec &) = default;
};

struct BranchObservation {
  NodeId site = 0;
  GuardKind kind = GuardKind::kInt;
  bool outcome = false;
  Relation relation = Relation::kEq;
  // op1 - op2. For string guards this is the first nonzero byte difference
  // (memcmp semantics), so `outcome == Holds(relation, f_value)` always.
  Wide f_value = 0;
  // String guards: op1[i] - op2[i] over the zero-padded operands.
  std::vector<int16_t> byte_diffs;
  // String guards: number of input bytes feeding op1.
  uint32_t compared_length = 0;
  // Integer guards: where the input-derived operand lives.
  std::optional<OperandSpec> operand;

  friend bool operator==(const BranchObservation &,
                         const BranchObservation &) = default;
};

struct ExecutionTrace {
  std::vector<EdgeId> edges;  // in path order
  std::vector<BranchObservation> observations;
  std::optional<NodeId> bug;  // bug node reached, if any
  uint64_t exec_time_ns = 0;

  void Clear() {
    edges.clear();
    observations.clear();
    bug.reset();
    exec_time_ns = 0;
  }
};

// How execution time is accounted.
enum class TimeMode : uint8_t {
  kWallClock,  // steady-clock nanoseconds per run
  kSynthetic,  // one unit per run; makes campaigns reproducible
};

// Per-node adaptive switch: which guards report observations.
using ActiveSites = std::vector<bool>;

// Runs `input` against `program`. Bytes past the end of `input` read as zero.
void Execute(const GuardProgram &program, ByteSpan input,
             const ActiveSites &active, ExecutionTrace &trace,
             TimeMode time_mode = TimeMode::kSynthetic);

// Reads the integer operand described by `spec` (zero-extended input).
Wide ReadOperand(ByteSpan input, const OperandSpec &spec);

// Writes `value` (already in range) into `input` per `spec`, growing `input`
// when the window extends past its end.
void WriteOperand(Bytes &input, const OperandSpec &spec, Wide value);

// Smallest and largest values representable by `spec`.
Wide OperandMin(const OperandSpec &spec);
Wide OperandMax(const OperandSpec &spec);

// A handle pairing a shared immutable program with its own adaptive switch.
// Distinct handles can run concurrently.
class Harness {
 public:
  explicit Harness(std::shared_ptr<const GuardProgram> program,
                   TimeMode time_mode = TimeMode::kSynthetic);

  // Turns observation reporting on for exactly `sites`.
  absl::Status SetActiveSites(std::span<const NodeId> sites);

  void Execute(ByteSpan input, ExecutionTrace &trace) const;
  ExecutionTrace Execute(ByteSpan input) const;

  const GuardProgram &program() const { return *program_; }
  const std::shared_ptr<const GuardProgram> &shared_program() const {
    return program_;
  }
  const ActiveSites &active_sites() const { return active_; }
  TimeMode time_mode() const { return time_mode_; }

 private:
  std::shared_ptr<const GuardProgram> program_;
  ActiveSites active_;
  TimeMode time_mode_;
};

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_HARNESS_H_
