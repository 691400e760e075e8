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

// Distance-guided mutation.
//
// A stage samples the scheduled seed's neighbourhood with a locality-limited
// havoc, estimates for every reached frontier branch a subgradient of its
// branch distance (keeping the sample with the largest L1 norm), and then
// takes one Newton step per branch toward the distance root.
//
// Integer guards are solved in operand space: the operand is reconstructed
// from the input, moved by -delta / slope, and written back with its
// declared width and endianness. String guards are solved byte by byte
// over the hot bytes located by single-byte probes.

#ifndef FRONTIERFUZZ_MUTATOR_H_
#define FRONTIERFUZZ_MUTATOR_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "frontierfuzz/branch_distance.h"
#include "frontierfuzz/cfg_frontier.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/havoc.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

struct MutatorConfig {
  size_t sample_size = 1024;
  size_t havoc_stack_max = 4;
  size_t havoc_bytes_per_op = 4;
  uint64_t rng_seed = 0;
};

absl::Status ValidateMutatorConfig(const MutatorConfig &cfg);

// Length-preserving havoc restricted to the seed's neighbourhood.
HavocOptions LocalHavocOptions(const MutatorConfig &cfg);

// Exact ratio num / den with den > 0, reduced.
struct Slope {
  Wide num = 0;
  Wide den = 1;

  static Slope Make(Wide num, Wide den);
  double value() const;
  friend bool operator==(const Slope &, const Slope &) = default;
};

enum class GradientSpace : uint8_t {
  kBytes,    // one component per differing input byte
  kOperand,  // one component: distance change per unit of the operand value
};

// Sparse subgradient; absent components are zero.
struct Subgradient {
  GradientSpace space = GradientSpace::kBytes;
  std::vector<std::pair<uint32_t, Slope>> components;

  double L1() const;
  bool zero() const { return components.empty(); }
};

// One guard observation together with its distance.
struct SiteSample {
  BranchObservation obs;
  BranchDistance distance;
};

struct SubgradientRecord {
  Subgradient g;
  Bytes witness;
  SiteSample sample;  // the witness's observation at the site
};

struct HotByteSet {
  NodeId site = 0;
  std::vector<uint32_t> offsets;  // sorted, contiguous
  uint32_t compared_length = 0;
  // Input offset of the first compared byte; may be negative if the window
  // would start before the input.
  int64_t window_start = 0;
  // Change of the byte difference per unit change of a hot input byte.
  Slope sensitivity;
  size_t probe_execs = 0;
};

struct ExecResult {
  const ExecutionTrace *trace = nullptr;
  std::span<const BranchDistance> distances;  // parallel to observations
  size_t new_edges = 0;
  size_t flips = 0;

  explicit operator bool() const { return trace != nullptr; }
};

// Runs inputs on behalf of the mutator and folds every run into the
// campaign state. The returned trace is valid until the next call.
class Executor {
 public:
  virtual ~Executor() = default;
  // Returns an empty result once the budget is exhausted.
  virtual ExecResult Execute(ByteSpan input) = 0;
  virtual size_t max_input_len() const = 0;
  virtual bool fully_explored(NodeId site) const = 0;
};

// Notified after every executed Newton input.
class NewtonObserver {
 public:
  virtual ~NewtonObserver() = default;
  virtual void OnNewton(NodeId site, ByteSpan witness,
                        const BranchDistance &witness_distance,
                        ByteSpan produced, const ExecResult &result) = 0;
};

// Byte-space subgradient of the seed -> mutant move. Vector distances enter
// through their L1 norm.
Subgradient ComputeSubgradient(ByteSpan seed, ByteSpan mutant,
                               const BranchDistance &d_seed,
                               const BranchDistance &d_mut);

// Operand-space subgradient: distance change over operand change.
Subgradient ComputeOperandSubgradient(const SiteSample &seed,
                                      const SiteSample &mutant);

// x - delta / g over the nonzero byte components, rounded half away from
// zero and clamped to a byte. Fails on a zero subgradient.
absl::StatusOr<Bytes> NewtonStep(ByteSpan witness, Wide delta,
                                 const Subgradient &g);

// Newton step on the integer operand described by the witness observation.
absl::StatusOr<Bytes> OperandNewtonStep(ByteSpan witness,
                                        const SiteSample &witness_sample,
                                        const Subgradient &g);

// Independent Newton steps on each hot byte of a string comparison.
Bytes HotByteNewtonStep(ByteSpan witness, const SiteSample &witness_sample,
                        const HotByteSet &hot, size_t max_len);

struct LocalSearchResult {
  std::map<NodeId, SubgradientRecord> records;
  std::map<NodeId, SiteSample> seed_samples;
  size_t samples = 0;
};

LocalSearchResult LocalSearch(ByteSpan seed, const FrontierSet &frontier,
                              const MutatorConfig &cfg, Rng &rng,
                              Executor &executor);

// Locates the input bytes feeding string guard `site` by replaying single
// byte differences between `seed` and `mutant`. Executes `seed` first.
HotByteSet InferHotBytes(ByteSpan seed, ByteSpan mutant, NodeId site,
                         Executor &executor);
HotByteSet InferHotBytes(ByteSpan seed, const SiteSample &seed_sample,
                         ByteSpan mutant, NodeId site, Executor &executor);

struct StageReport {
  size_t execs = 0;
  size_t samples = 0;
  size_t newton_execs = 0;
  size_t probe_execs = 0;
  size_t flips = 0;
  size_t new_edges = 0;
};

StageReport MutateStage(ByteSpan seed, const FrontierSet &frontier,
                        const MutatorConfig &cfg, Executor &executor, Rng &rng,
                        NewtonObserver *observer = nullptr);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_MUTATOR_H_
