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

// Folds the stats.jsonl files of many campaigns into per-mode coverage
// curves: median and quartiles of edges covered over the campaign clock.

#ifndef FRONTIERFUZZ_REPORT_H_
#define FRONTIERFUZZ_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "frontierfuzz/campaign.h"

namespace frontierfuzz {

struct ReportRow {
  Mode mode = Mode::kFox;
  uint64_t time = 0;
  double median_edges = 0;
  double p25_edges = 0;
  double p75_edges = 0;
};

// Linearly interpolated percentile, p in [0, 1]. `values` must be nonempty.
double Percentile(std::vector<double> values, double p);

absl::StatusOr<std::vector<LogRecord>> ReadStatsFile(
    const std::filesystem::path &path);

// Each run is a step function of time; rows are emitted at every time any
// run of the mode logged a record.
std::vector<ReportRow> FoldRuns(const std::vector<std::vector<LogRecord>> &runs);

std::string ReportCsv(const std::vector<ReportRow> &rows);

// Collects every stats.jsonl below `dir` and writes `dir`/report.csv.
absl::StatusOr<std::vector<ReportRow>> WriteReport(const std::filesystem::path &dir);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_REPORT_H_
