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

// Frontier-branch scheduling.
//
// Each frontier branch keeps two clocks: total time spent on inputs that
// reach it, and productive time spent on inputs that lowered its minimum
// distance. A stage schedules the top seed of the branch maximizing
//
//   log(pt) - log(tt) - log(sc[top seed])
//
// where sc counts how often that seed has been scheduled. Comparison is done
// exactly by cross-multiplication; the log form is only reported.

#ifndef FRONTIERFUZZ_SCHEDULER_H_
#define FRONTIERFUZZ_SCHEDULER_H_

#include <cstdint>
#include <map>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "frontierfuzz/branch_distance.h"
#include "frontierfuzz/cfg_frontier.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

struct FrontierStats {
  uint64_t pt = 0;  // productive time
  uint64_t tt = 0;  // total time
  uint64_t th = 0;  // total hits
  uint64_t ph = 0;  // productive hits
  DistanceRecord ts;  // top seed
};

// Per-input schedule counts. Inputs are keyed by content; unseen inputs
// count as 1.
class ScheduleCounters {
 public:
  uint64_t Get(ByteSpan input) const;
  void Increment(ByteSpan input);
  size_t size() const { return counts_.size(); }

 private:
  absl::flat_hash_map<Bytes, uint64_t> counts_;
};

struct Selection {
  NodeId branch = 0;
  Bytes seed;
  double logprob = 0;
  uint64_t sc = 1;  // count of the seed before this selection
};

class Scheduler {
 public:
  // Accounts one execution reaching frontier branch `site`. Returns whether
  // it lowered the branch's minimum distance.
  absl::StatusOr<bool> RecordExecution(NodeId site, ByteSpan input,
                                       const BranchDistance &d,
                                       uint64_t exec_time,
                                       const FrontierSet &frontier);

  // Picks the branch with the best discounted productivity, ties to the
  // lowest id, and bumps its seed's count.
  absl::StatusOr<Selection> SelectNext(const FrontierSet &frontier);

  const FrontierStats *stats(NodeId site) const;
  const ScheduleCounters &counters() const { return counters_; }

 private:
  std::map<NodeId, FrontierStats> stats_;
  ScheduleCounters counters_;
};

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_SCHEDULER_H_
