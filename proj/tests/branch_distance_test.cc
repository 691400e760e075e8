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

#include "frontierfuzz/branch_distance.h"

#include <cstdlib>
#include <functional>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace frontierfuzz {
namespace {

using ::frontierfuzz::testing::B;

// The distance table row by row, written independently of the library.
struct Row {
  bool outcome;
  Relation relation;
  std::function<long(long)> delta;
};

const std::vector<Row> &Table() {
  static const std::vector<Row> rows = {
      {false, Relation::kLt, [](long f) { return f - 1; }},
      {true, Relation::kGe, [](long f) { return f - 1; }},
      {false, Relation::kLe, [](long f) { return f; }},
      {true, Relation::kGt, [](long f) { return f; }},
      {false, Relation::kGt, [](long f) { return 1 - f; }},
      {true, Relation::kLe, [](long f) { return 1 - f; }},
      {false, Relation::kGe, [](long f) { return -f; }},
      {true, Relation::kLt, [](long f) { return -f; }},
      {false, Relation::kEq, [](long f) { return std::labs(f); }},
      {true, Relation::kNe, [](long f) { return std::labs(f); }},
      {false, Relation::kNe, [](long f) { return 1 - std::labs(f); }},
      {true, Relation::kEq, [](long f) { return 1 - std::labs(f); }},
  };
  return rows;
}

TEST(DistanceTable, ExhaustiveConformance) {
  ASSERT_EQ(Table().size(), 12u);
  int checked = 0;
  for (const Row &row : Table()) {
    for (long f = -3; f <= 3; ++f) {
      absl::StatusOr<Wide> d = Distance(row.outcome, row.relation, f);
      if (Holds(row.relation, f) != row.outcome) {
        EXPECT_FALSE(d.ok());
        continue;
      }
      ASSERT_TRUE(d.ok()) << d.status();
      EXPECT_EQ(*d, Wide(row.delta(f)))
          << row.outcome << " " << RelationName(row.relation) << " f=" << f;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Distance, WorkedExample) { EXPECT_EQ(*Distance(true, Relation::kLe, -10), 11); }

TEST(Distance, FalseLessThan) { EXPECT_EQ(*Distance(false, Relation::kLt, 7), 6); }

TEST(Distance, TrueNotEqual) { EXPECT_EQ(*Distance(true, Relation::kNe, 5), 5); }

TEST(Distance, InconsistentTupleIsAnError) {
  EXPECT_FALSE(Distance(true, Relation::kLt, 3).ok());
  EXPECT_FALSE(Distance(false, Relation::kEq, 0).ok());
}

TEST(StringDistance, PerByteRule) {
  std::vector<int16_t> diffs = {0, 0, -99};
  absl::StatusOr<BranchDistance> d = StringDistance(true, Relation::kNe, diffs);
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->vec, (std::vector<Wide>{0, 0, 99}));
  EXPECT_EQ(d->Magnitude(), 99);
}

TEST(StringDistance, EqualityAchieved) {
  std::vector<int16_t> diffs = {0, 0, 0};
  EXPECT_EQ(StringDistance(false, Relation::kEq, diffs)->vec,
            (std::vector<Wide>{0, 0, 0}));
}

TEST(StringDistance, SingleByte) {
  std::vector<int16_t> diffs = {1};
  EXPECT_EQ(StringDistance(false, Relation::kEq, diffs)->vec,
            std::vector<Wide>{1});
}

TEST(StringDistance, EmptyIsAnError) {
  EXPECT_FALSE(StringDistance(false, Relation::kEq, {}).ok());
}

TEST(StringDistance, MatchesScalarRulePerIndex) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<int16_t> diffs(1 + RandBelow(rng, 8));
    for (auto &d : diffs) d = static_cast<int16_t>(static_cast<int>(RandBelow(rng, 511)) - 255);
    for (const Row &row : Table()) {
      absl::StatusOr<BranchDistance> d =
          StringDistance(row.outcome, row.relation, diffs);
      ASSERT_TRUE(d.ok());
      ASSERT_EQ(d->vec.size(), diffs.size());
      for (size_t k = 0; k < diffs.size(); ++k) {
        EXPECT_EQ(d->vec[k], Wide(row.delta(diffs[k])));
      }
    }
  }
}

TEST(DistanceLess, VectorsByNormThenLexicographic) {
  auto v = [](std::vector<Wide> x) { return BranchDistance::Vector(std::move(x)); };
  EXPECT_TRUE(DistanceLess(v({0, 3}), v({2, 2})));
  EXPECT_TRUE(DistanceLess(v({1, 2}), v({2, 1})));
  EXPECT_FALSE(DistanceLess(v({2, 1}), v({1, 2})));
  EXPECT_TRUE(DistanceLess(BranchDistance::Scalar(-5), BranchDistance::Scalar(2)));
}

TEST(UpdateRecord, FirstObservationLowers) {
  DistanceRecord rec;
  EXPECT_TRUE(*UpdateRecord(rec, B({5}), BranchDistance::Scalar(11)));
  EXPECT_EQ(rec.best->scalar, 11);
}

TEST(UpdateRecord, StrictlyLowerReplaces) {
  DistanceRecord rec;
  ASSERT_TRUE(UpdateRecord(rec, B({5}), BranchDistance::Scalar(11)).ok());
  EXPECT_TRUE(*UpdateRecord(rec, B({7}), BranchDistance::Scalar(9)));
  EXPECT_EQ(rec.best->scalar, 9);
  EXPECT_EQ(rec.best_input, B({7}));
}

TEST(UpdateRecord, TieKeepsEarlier) {
  DistanceRecord rec;
  ASSERT_TRUE(UpdateRecord(rec, B({7}), BranchDistance::Scalar(9)).ok());
  EXPECT_FALSE(*UpdateRecord(rec, B({8}), BranchDistance::Scalar(9)));
  EXPECT_EQ(rec.best_input, B({7}));
}

TEST(UpdateRecord, FormMismatchIsAnError) {
  DistanceRecord rec;
  ASSERT_TRUE(UpdateRecord(rec, B({7}), BranchDistance::Scalar(9)).ok());
  EXPECT_FALSE(UpdateRecord(rec, B({7}), BranchDistance::Vector({1})).ok());
}

TEST(DistanceOf, MatchesObservationKind) {
  BranchObservation obs;
  obs.kind = GuardKind::kStr;
  obs.outcome = false;
  obs.relation = Relation::kEq;
  obs.byte_diffs = {0, 3};
  obs.f_value = 3;
  absl::StatusOr<BranchDistance> d = DistanceOf(obs);
  ASSERT_TRUE(d.ok());
  EXPECT_TRUE(d->is_vector());
  EXPECT_EQ(d->vec, (std::vector<Wide>{0, 3}));

  obs.kind = GuardKind::kInt;
  obs.byte_diffs.clear();
  d = DistanceOf(obs);
  ASSERT_TRUE(d.ok());
  EXPECT_FALSE(d->is_vector());
  EXPECT_EQ(d->scalar, 3);
}

}  // namespace
}  // namespace frontierfuzz
