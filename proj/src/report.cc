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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace frontierfuzz {

double Percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

absl::StatusOr<std::vector<LogRecord>> ReadStatsFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::vector<LogRecord> records;
  std::string line;
  for (size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    absl::StatusOr<LogRecord> rec = ParseLogRecord(line);
    if (!rec.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path.string(), ":", lineno, ": ", rec.status().message()));
    }
    records.push_back(*std::move(rec));
  }
  return records;
}

namespace {

// Edges covered by `run` at time `t`: the last record at or before t.
double EdgesAt(const std::vector<LogRecord> &run, uint64_t t) {
  auto it = std::upper_bound(
      run.begin(), run.end(), t,
      [](uint64_t v, const LogRecord &r) { return v < r.t_ns; });
  if (it == run.begin()) return 0;
  return static_cast<double>(std::prev(it)->edges_covered);
}

}  // namespace

std::vector<ReportRow> FoldRuns(const std::vector<std::vector<LogRecord>> &runs) {
  std::map<Mode, std::vector<const std::vector<LogRecord> *>> by_mode;
  for (const auto &run : runs) {
    if (!run.empty()) by_mode[run.front().mode].push_back(&run);
  }
  std::vector<ReportRow> rows;
  for (const auto &[mode, group] : by_mode) {
    std::set<uint64_t> times;
    for (const auto *run : group) {
      for (const LogRecord &r : *run) times.insert(r.t_ns);
    }
    for (uint64_t t : times) {
      std::vector<double> edges;
      edges.reserve(group.size());
      for (const auto *run : group) edges.push_back(EdgesAt(*run, t));
      rows.push_back(ReportRow{mode, t, Percentile(edges, 0.5),
                               Percentile(edges, 0.25), Percentile(edges, 0.75)});
    }
  }
  return rows;
}

std::string ReportCsv(const std::vector<ReportRow> &rows) {
  std::string out = "mode,time,median_edges,p25_edges,p75_edges\n";
  for (const ReportRow &r : rows) {
    absl::StrAppendFormat(&out, "%s,%d,%g,%g,%g\n", std::string(ModeName(r.mode)),
                          r.time,
                          r.median_edges, r.p25_edges, r.p75_edges);
  }
  return out;
}

absl::StatusOr<std::vector<ReportRow>> WriteReport(
    const std::filesystem::path &dir) {
  std::error_code ec;
  std::vector<std::filesystem::path> files;
  for (auto it = std::filesystem::recursive_directory_iterator(dir, ec);
       !ec && it != std::filesystem::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file() && it->path().filename() == "stats.jsonl") {
      files.push_back(it->path());
    }
  }
  if (ec) {
    return absl::NotFoundError(
        absl::StrCat("cannot scan ", dir.string(), ": ", ec.message()));
  }
  if (files.empty()) {
    return absl::NotFoundError(
        absl::StrCat("no stats.jsonl under ", dir.string()));
  }
  std::sort(files.begin(), files.end());
  std::vector<std::vector<LogRecord>> runs;
  for (const auto &f : files) {
    absl::StatusOr<std::vector<LogRecord>> run = ReadStatsFile(f);
    if (!run.ok()) return run.status();
    runs.push_back(*std::move(run));
  }
  std::vector<ReportRow> rows = FoldRuns(runs);
  std::ofstream out(dir / "report.csv", std::ios::trunc);
  out << ReportCsv(rows);
  if (!out) return absl::UnavailableError("cannot write report.csv");
  return rows;
}

}  // namespace frontierfuzz
