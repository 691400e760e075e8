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

#include "frontierfuzz/convexity.h"

#include "absl/strings/str_cat.h"

namespace frontierfuzz {

double ConvexityStats::ratio() const {
  if (probes() == 0) return 1.0;
  return static_cast<double>(passes) / static_cast<double>(probes());
}

Bytes Midpoint(ByteSpan a, ByteSpan b) {
  Bytes mid(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mid[i] = static_cast<uint8_t>((unsigned{a[i]} + unsigned{b[i]}) / 2);
  }
  return mid;
}

bool MidpointConvex(const BranchDistance &d1, const BranchDistance &d2,
                    const BranchDistance &mid) {
  return 2 * mid.Magnitude() <= d1.Magnitude() + d2.Magnitude();
}

absl::StatusOr<ProbeOutcome> ConvexityProbe(ByteSpan x1, ByteSpan x2,
                                            DistanceAt distance_at) {
  if (x1.size() != x2.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "probe endpoints differ in length: ", x1.size(), " vs ", x2.size()));
  }
  std::optional<BranchDistance> d1 = distance_at(x1);
  std::optional<BranchDistance> d2 = distance_at(x2);
  if (!d1 || !d2) {
    return absl::InvalidArgumentError("probe endpoint does not reach the site");
  }
  Bytes mid = Midpoint(x1, x2);
  std::optional<BranchDistance> dm = distance_at(mid);
  if (!dm) return ProbeOutcome::kNoProbe;
  return MidpointConvex(*d1, *d2, *dm) ? ProbeOutcome::kPass
                                       : ProbeOutcome::kFail;
}

std::optional<BranchDistance> SiteDistance(const Harness &harness, NodeId site,
                                           ByteSpan input) {
  ExecutionTrace trace;
  harness.Execute(input, trace);
  for (const BranchObservation &obs : trace.observations) {
    if (obs.site != site) continue;
    absl::StatusOr<BranchDistance> d = DistanceOf(obs);
    if (!d.ok()) return std::nullopt;
    return *std::move(d);
  }
  return std::nullopt;
}

absl::StatusOr<ProbeOutcome> ConvexityProbe(NodeId site, ByteSpan x1,
                                            ByteSpan x2,
                                            const Harness &harness) {
  return ConvexityProbe(x1, x2, [&](ByteSpan input) {
    return SiteDistance(harness, site, input);
  });
}

void ConvexityTracker::Record(NodeId site, ProbeOutcome outcome) {
  ConvexityStats &s = stats_[site];
  switch (outcome) {
    case ProbeOutcome::kPass:
      ++s.passes;
      break;
    case ProbeOutcome::kFail:
      ++s.fails;
      break;
    case ProbeOutcome::kNoProbe:
      ++s.no_probes;
      break;
  }
}

}  // namespace frontierfuzz
