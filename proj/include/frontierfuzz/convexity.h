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

// Midpoint convexity probe: does a branch distance look convex between two
// inputs that reach the branch?

#ifndef FRONTIERFUZZ_CONVEXITY_H_
#define FRONTIERFUZZ_CONVEXITY_H_

#include <cstdint>
#include <map>
#include <optional>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "frontierfuzz/branch_distance.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

enum class ProbeOutcome : uint8_t { kPass, kFail, kNoProbe };

struct ConvexityStats {
  uint64_t passes = 0;
  uint64_t fails = 0;
  uint64_t no_probes = 0;

  uint64_t probes() const { return passes + fails; }
  // passes / probes, or 1 when nothing was probed.
  double ratio() const;
};

// Byte-wise floor((a + b) / 2). Lengths must match.
Bytes Midpoint(ByteSpan a, ByteSpan b);

// 2 * |mid| <= |d1| + |d2|, using the L1 norm for vector distances.
bool MidpointConvex(const BranchDistance &d1, const BranchDistance &d2,
                    const BranchDistance &mid);

// Distance of the probed site for an input, or nullopt when the input does
// not reach the site.
using DistanceAt =
    absl::FunctionRef<std::optional<BranchDistance>(ByteSpan input)>;

// Fails if the lengths differ or either endpoint misses the site.
absl::StatusOr<ProbeOutcome> ConvexityProbe(ByteSpan x1, ByteSpan x2,
                                            DistanceAt distance_at);

// Runs the probe through `harness`, which must report `site`.
absl::StatusOr<ProbeOutcome> ConvexityProbe(NodeId site, ByteSpan x1,
                                            ByteSpan x2, const Harness &harness);

// Distance at `site` for one run of `input`.
std::optional<BranchDistance> SiteDistance(const Harness &harness, NodeId site,
                                           ByteSpan input);

class ConvexityTracker {
 public:
  void Record(NodeId site, ProbeOutcome outcome);
  const std::map<NodeId, ConvexityStats> &stats() const { return stats_; }

 private:
  std::map<NodeId, ConvexityStats> stats_;
};

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_CONVEXITY_H_
