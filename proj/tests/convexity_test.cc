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

#include "gtest/gtest.h"
#include "test_util.h"

namespace frontierfuzz {
namespace {

using ::frontierfuzz::testing::B;
using ::frontierfuzz::testing::Builtin;

Harness Active(std::shared_ptr<const GuardProgram> p, std::vector<NodeId> sites) {
  Harness h(p);
  EXPECT_TRUE(h.SetActiveSites(sites).ok());
  return h;
}

TEST(Midpoint, FloorsBytewise) {
  EXPECT_EQ(Midpoint(B({0, 255, 3}), B({1, 255, 8})), B({0, 255, 5}));
}

TEST(ConvexityProbe, LinearGuardPassesWithEquality) {
  // x <= 15: delta = 16 - x, so 12 -> 4, 8 -> 8, midpoint 10 -> 6.
  Harness h = Active(Builtin("le15"), {0});
  EXPECT_EQ(SiteDistance(h, 0, B({10}))->scalar, 6);
  EXPECT_EQ(*ConvexityProbe(0, B({12}), B({8}), h), ProbeOutcome::kPass);
}

TEST(ConvexityProbe, AboveChordFails) {
  auto at = [](ByteSpan x) -> std::optional<BranchDistance> {
    if (x[0] == 2) return BranchDistance::Scalar(4);
    if (x[0] == 6) return BranchDistance::Scalar(8);
    return BranchDistance::Scalar(10);
  };
  EXPECT_EQ(*ConvexityProbe(B({2}), B({6}), at), ProbeOutcome::kFail);
}

TEST(ConvexityProbe, MidpointMissingSiteIsNoProbe) {
  // Node 2 is reached iff the u16 tag differs from 19280; the midpoint of
  // 19279 and 19281 is the tag itself.
  Harness h = Active(Builtin("mixed_tree"), {2});
  EXPECT_EQ(*ConvexityProbe(2, B({0x4F, 0x4B}), B({0x51, 0x4B}), h),
            ProbeOutcome::kNoProbe);
}

TEST(ConvexityProbe, Errors) {
  Harness h = Active(Builtin("mixed_tree"), {2});
  EXPECT_FALSE(ConvexityProbe(2, B({1}), B({1, 2}), h).ok());
  EXPECT_FALSE(ConvexityProbe(2, B({0x50, 0x4B}), B({0, 0}), h).ok());
}

TEST(ConvexityProbe, VectorDistancesUseL1) {
  Harness h = Active(Builtin("magic4_str"), {0});
  Bytes a(12, 0), b(12, 0);
  a[4] = 'M' - 10;
  b[4] = 'M' + 10;
  // |d| is 10 at both ends and 0 at the midpoint.
  EXPECT_EQ(*ConvexityProbe(0, a, b, h), ProbeOutcome::kPass);
}

TEST(ConvexityProbe, XorGuardRecordsFailures) {
  auto p = Builtin("xor_guard");
  Harness h = Active(p, {0});
  Rng rng(3);
  ConvexityTracker tracker;
  for (int i = 0; i < 100; ++i) {
    Bytes a(4), b(4);
    for (auto &x : a) x = static_cast<uint8_t>(rng());
    for (auto &x : b) x = static_cast<uint8_t>(rng());
    tracker.Record(0, *ConvexityProbe(0, a, b, h));
  }
  EXPECT_LT(tracker.stats().at(0).ratio(), 1.0);
}

TEST(ConvexityTracker, Ratio) {
  ConvexityTracker t;
  t.Record(1, ProbeOutcome::kPass);
  t.Record(1, ProbeOutcome::kPass);
  t.Record(1, ProbeOutcome::kFail);
  t.Record(1, ProbeOutcome::kNoProbe);
  const ConvexityStats &s = t.stats().at(1);
  EXPECT_EQ(s.probes(), 3u);
  EXPECT_DOUBLE_EQ(s.ratio(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ConvexityStats{}.ratio(), 1.0);
}

}  // namespace
}  // namespace frontierfuzz
