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

#include "frontierfuzz/report.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace frontierfuzz {
namespace {

LogRecord At(Mode mode, uint64_t t, uint64_t edges) {
  LogRecord r;
  r.mode = mode;
  r.t_ns = t;
  r.execs = t;
  r.edges_covered = edges;
  return r;
}

TEST(Percentile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(Percentile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Percentile({4, 1, 3, 2}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(Percentile({7}, 0.75), 7);
  EXPECT_DOUBLE_EQ(Percentile({1, 9}, 1.0), 9);
}

TEST(FoldRuns, StepFunctionPerMode) {
  std::vector<std::vector<LogRecord>> runs = {
      {At(Mode::kFox, 1, 1), At(Mode::kFox, 10, 3)},
      {At(Mode::kFox, 5, 2)},
      {At(Mode::kBase, 1, 1)},
  };
  std::vector<ReportRow> rows = FoldRuns(runs);
  ASSERT_EQ(rows.size(), 4u);
  // fox at t=1: runs hold 1 and 0 (not started).
  EXPECT_EQ(rows[0].mode, Mode::kFox);
  EXPECT_EQ(rows[0].time, 1u);
  EXPECT_DOUBLE_EQ(rows[0].median_edges, 0.5);
  // fox at t=5: 1 and 2.
  EXPECT_DOUBLE_EQ(rows[1].median_edges, 1.5);
  // fox at t=10: 3 and 2.
  EXPECT_DOUBLE_EQ(rows[2].median_edges, 2.5);
  EXPECT_DOUBLE_EQ(rows[2].p25_edges, 2.25);
  EXPECT_DOUBLE_EQ(rows[2].p75_edges, 2.75);
  EXPECT_EQ(rows[3].mode, Mode::kBase);
}

TEST(WriteReport, FoldsNestedStatsFiles) {
  auto dir = std::filesystem::path(::testing::TempDir()) / "report_dir";
  std::filesystem::remove_all(dir);
  for (int i = 0; i < 3; ++i) {
    auto sub = dir / ("run" + std::to_string(i));
    std::filesystem::create_directories(sub);
    std::ofstream out(sub / "stats.jsonl");
    out << LogRecordToJson(At(Mode::kFox, 1, 1)) << "\n"
        << LogRecordToJson(At(Mode::kFox, 100, 2 + i)) << "\n";
  }
  absl::StatusOr<std::vector<ReportRow>> rows = WriteReport(dir);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 2u);
  std::ifstream csv(dir / "report.csv");
  std::stringstream text;
  text << csv.rdbuf();
  EXPECT_EQ(text.str(),
            "mode,time,median_edges,p25_edges,p75_edges\n"
            "fox,1,1,1,1\n"
            "fox,100,3,2.5,3.5\n");
}

TEST(WriteReport, MissingStatsIsAnError) {
  auto dir = std::filesystem::path(::testing::TempDir()) / "report_empty";
  std::filesystem::create_directories(dir);
  EXPECT_FALSE(WriteReport(dir).ok());
}

TEST(ReadStatsFile, BadLineNamesLocation) {
  auto path = std::filesystem::path(::testing::TempDir()) / "bad_stats.jsonl";
  {
    std::ofstream out(path);
    out << LogRecordToJson(At(Mode::kFox, 1, 1)) << "\n{\"oops\": 1}\n";
  }
  absl::StatusOr<std::vector<LogRecord>> r = ReadStatsFile(path);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find(":2:"), std::string::npos);
}

}  // namespace
}  // namespace frontierfuzz
