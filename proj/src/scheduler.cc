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

#include "frontierfuzz/scheduler.h"

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frontierfuzz {

uint64_t ScheduleCounters::Get(ByteSpan input) const {
  auto it = counts_.find(Bytes(input.begin(), input.end()));
  return it == counts_.end() ? 1 : it->second;
}

void ScheduleCounters::Increment(ByteSpan input) {
  auto [it, inserted] = counts_.try_emplace(Bytes(input.begin(), input.end()), 1);
  ++it->second;
}

absl::StatusOr<bool> Scheduler::RecordExecution(NodeId site, ByteSpan input,
                                                const BranchDistance &d,
                                                uint64_t exec_time,
                                                const FrontierSet &frontier) {
  if (!frontier.contains(site)) {
    return absl::FailedPreconditionError(
        absl::StrCat("site ", site, " is not a frontier branch"));
  }
  FrontierStats &s = stats_[site];
  s.ts.site = site;
  auto lowered = UpdateRecord(s.ts, input, d);
  if (!lowered.ok()) return lowered.status();
  s.tt += exec_time;
  s.th += 1;
  if (*lowered) {
    s.pt += exec_time;
    s.ph += 1;
  }
  return *lowered;
}

absl::StatusOr<Selection> Scheduler::SelectNext(const FrontierSet &frontier) {
  if (frontier.empty()) return absl::FailedPreconditionError("empty frontier");
  const FrontierStats *best = nullptr;
  NodeId best_id = 0;
  uint64_t best_sc = 1;
  for (NodeId b : frontier) {
    auto it = stats_.find(b);
    if (it == stats_.end() || it->second.tt == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("frontier branch ", b, " has no statistics"));
    }
    const FrontierStats &s = it->second;
    const uint64_t sc = counters_.Get(s.ts.best_input);
    // pt/(tt*sc) > best.pt/(best.tt*best_sc), strictly, so ties keep the
    // lower id.
    if (best == nullptr ||
        Wide(s.pt) * best->tt * best_sc > Wide(best->pt) * s.tt * sc) {
      best = &s;
      best_id = b;
      best_sc = sc;
    }
  }
  Selection sel;
  sel.branch = best_id;
  sel.seed = best->ts.best_input;
  sel.sc = best_sc;
  sel.logprob = std::log(static_cast<double>(best->pt)) -
                std::log(static_cast<double>(best->tt)) -
                std::log(static_cast<double>(best_sc));
  counters_.Increment(sel.seed);
  return sel;
}

const FrontierStats *Scheduler::stats(NodeId site) const {
  auto it = stats_.find(site);
  return it == stats_.end() ? nullptr : &it->second;
}

}  // namespace frontierfuzz
