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

// The fuzzing control loop: pick a seed, mutate it, execute, fold results
// into coverage, frontier and scheduler state, until the budget runs out.
//
//   kFox       frontier scheduling + distance-guided mutation
//   kFoxSched  frontier scheduling + plain havoc batches
//   kBase      round-robin over the corpus + plain havoc batches
//
// Frontier modes fall back to round-robin stages while the frontier is
// empty.

#ifndef FRONTIERFUZZ_CAMPAIGN_H_
#define FRONTIERFUZZ_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "frontierfuzz/cfg_frontier.h"
#include "frontierfuzz/convexity.h"
#include "frontierfuzz/guard_program.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/mutator.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

enum class Mode : uint8_t { kFox, kFoxSched, kBase };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);

struct Budget {
  std::optional<uint64_t> max_execs;
  std::optional<double> max_seconds;  // measured on the campaign clock
};

struct CampaignConfig {
  Mode mode = Mode::kFox;
  Budget budget;
  MutatorConfig mutator;
  TimeMode time_mode = TimeMode::kSynthetic;
  // Plain havoc used by kFoxSched and kBase stages.
  size_t havoc_stack_max = 16;
  size_t havoc_bytes_per_op = 8;
  // Midpoint-probe every executed Newton input against its witness.
  bool probe_convexity = false;
};

absl::Status ValidateCampaignConfig(const CampaignConfig &cfg);

struct CorpusEntry {
  Bytes input;
  std::vector<EdgeId> first_cover;
  uint64_t exec_index = 0;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  // Inputs that lowered some branch's minimum distance without adding
  // coverage.
  std::vector<Bytes> side_pool;
};

struct Finding {
  NodeId bug_node = 0;
  Bytes input;
  uint64_t exec_index = 0;
};

// One line of stats.jsonl, written at the end of every stage. Stage 0 is the
// seed run.
struct LogRecord {
  uint64_t t_ns = 0;
  uint64_t execs = 0;
  uint64_t edges_covered = 0;
  uint64_t frontier_size = 0;
  uint64_t corpus_size = 0;
  uint64_t flips = 0;  // cumulative
  Mode mode = Mode::kFox;
  uint64_t stage = 0;
  std::optional<NodeId> scheduled_branch;
  double logprob = 0;
  uint64_t sc = 0;
  uint64_t new_edges = 0;
  uint64_t samples = 0;
  uint64_t newton_execs = 0;
  uint64_t probe_execs = 0;
  uint64_t findings = 0;  // cumulative
  bool fallback = false;

  friend bool operator==(const LogRecord &, const LogRecord &) = default;
};

std::string LogRecordToJson(const LogRecord &rec);
absl::StatusOr<LogRecord> ParseLogRecord(std::string_view line);

struct CampaignResult {
  std::vector<LogRecord> log;
  Corpus corpus;
  std::vector<Finding> findings;
  uint64_t execs = 0;
  uint64_t edges_covered = 0;
  FrontierSet frontier;
  std::map<NodeId, ConvexityStats> convexity;
};

absl::StatusOr<CampaignResult> RunCampaign(
    std::shared_ptr<const GuardProgram> program, std::span<const Bytes> seeds,
    const CampaignConfig &cfg, uint64_t rng_seed);

// Writes stats.jsonl, corpus/ and findings/ (plus convexity.json when
// probes ran) under `dir`.
absl::Status WriteCampaignOutputs(const CampaignResult &result,
                                  const std::filesystem::path &dir);

// Reads every regular file in `dir` in name order.
absl::StatusOr<std::vector<Bytes>> ReadSeedDir(const std::filesystem::path &dir);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_CAMPAIGN_H_
