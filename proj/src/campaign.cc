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

#include "frontierfuzz/campaign.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "frontierfuzz/branch_distance.h"
#include "frontierfuzz/havoc.h"
#include "frontierfuzz/scheduler.h"
#include "json.hpp"

namespace frontierfuzz {
namespace {

using Json = nlohmann::ordered_json;

const BranchObservation *FindSite(const ExecutionTrace &trace, NodeId site,
                                  size_t *index) {
  for (size_t i = 0; i < trace.observations.size(); ++i) {
    if (trace.observations[i].site == site) {
      *index = i;
      return &trace.observations[i];
    }
  }
  return nullptr;
}

// Campaign-wide state. Every execution of the campaign goes through Run so
// that coverage, frontier, scheduler and corpus stay in step.
class CampaignState final : public Executor, public NewtonObserver {
 public:
  CampaignState(std::shared_ptr<const GuardProgram> program,
                const CampaignConfig &cfg)
      : program_(program),
        harness_(program, cfg.time_mode),
        cov_(program),
        cfg_(cfg),
        start_(std::chrono::steady_clock::now()) {}

  ExecResult Execute(ByteSpan input) override {
    if (Exhausted()) return {};
    return Run(input);
  }
  size_t max_input_len() const override { return program_->max_input_len; }
  bool fully_explored(NodeId site) const override {
    return cov_.fully_explored(site);
  }

  void OnNewton(NodeId site, ByteSpan witness,
                const BranchDistance &witness_distance, ByteSpan produced,
                const ExecResult &result) override {
    if (witness.size() != produced.size()) return;
    size_t idx = 0;
    if (FindSite(*result.trace, site, &idx) == nullptr) return;
    BranchDistance d2 = result.distances[idx];
    Bytes mid = Midpoint(witness, produced);
    ExecResult m = Execute(mid);
    if (!m) return;
    ++stage_probe_execs_;
    if (FindSite(*m.trace, site, &idx) == nullptr) {
      convexity_.Record(site, ProbeOutcome::kNoProbe);
      return;
    }
    convexity_.Record(site, MidpointConvex(witness_distance, d2,
                                           m.distances[idx])
                                ? ProbeOutcome::kPass
                                : ProbeOutcome::kFail);
  }

  // Executes regardless of the budget.
  ExecResult Run(ByteSpan input) {
    harness_.Execute(input, trace_);
    const uint64_t exec_index = execs_++;
    if (cfg_.time_mode == TimeMode::kWallClock) {
      t_ns_ = ElapsedNs();
    } else {
      t_ns_ += trace_.exec_time_ns;
    }

    distances_.clear();
    for (const BranchObservation &obs : trace_.observations) {
      absl::StatusOr<BranchDistance> d = DistanceOf(obs);
      if (!d.ok()) {
        Fail(d.status());
        distances_.push_back(BranchDistance::Scalar(0));
      } else {
        distances_.push_back(*std::move(d));
      }
    }

    // Scheduler statistics are charged against the frontier in force when
    // the input started.
    bool lowered = false;
    for (size_t i = 0; i < trace_.observations.size(); ++i) {
      const NodeId site = trace_.observations[i].site;
      if (!frontier_.contains(site)) continue;
      absl::StatusOr<bool> r = scheduler_.RecordExecution(
          site, input, distances_[i], trace_.exec_time_ns, frontier_);
      if (!r.ok()) {
        Fail(r.status());
      } else {
        lowered |= *r;
      }
    }

    fresh_.clear();
    absl::StatusOr<size_t> added = cov_.Absorb(trace_, &fresh_);
    if (!added.ok()) {
      Fail(added.status());
      added = 0;
    }
    size_t flips = 0;
    for (EdgeId e : fresh_) {
      if (cov_.edge_hit(SiblingEdge(e))) ++flips;
    }
    if (*added > 0) {
      tracker_.OnFreshEdges(cov_, fresh_);
      frontier_ = tracker_.Snapshot();
      const size_t entry = corpus_.entries.size();
      corpus_.entries.push_back(
          CorpusEntry{Bytes(input.begin(), input.end()), fresh_, exec_index});
      for (EdgeId e : fresh_) first_entry_.try_emplace(EdgeSource(e), entry);
    } else if (lowered) {
      Bytes copy(input.begin(), input.end());
      if (side_seen_.insert(copy).second) {
        corpus_.side_pool.push_back(std::move(copy));
      }
    }
    if (trace_.bug && bug_seen_.insert(*trace_.bug).second) {
      findings_.push_back(
          Finding{*trace_.bug, Bytes(input.begin(), input.end()), exec_index});
    }
    flips_ += flips;
    new_edges_ += *added;
    return ExecResult{&trace_, distances_, *added, flips};
  }

  bool Exhausted() const {
    if (cfg_.budget.max_execs && execs_ >= *cfg_.budget.max_execs) return true;
    if (cfg_.budget.max_seconds) {
      const uint64_t now =
          cfg_.time_mode == TimeMode::kWallClock ? ElapsedNs() : t_ns_;
      if (static_cast<double>(now) >= *cfg_.budget.max_seconds * 1e9) {
        return true;
      }
    }
    return false;
  }

  // Gives every frontier branch scheduler statistics by replaying the
  // corpus entry that first reached it.
  absl::Status Calibrate(const FrontierSet &frontier) {
    for (NodeId site : frontier) {
      if (scheduler_.stats(site) != nullptr) continue;
      auto it = first_entry_.find(site);
      if (it == first_entry_.end()) {
        return absl::InternalError(
            absl::StrCat("frontier branch ", site, " has no corpus entry"));
      }
      const Bytes input = corpus_.entries[it->second].input;
      if (!Execute(input)) break;
    }
    return absl::OkStatus();
  }

  size_t HavocBatch(ByteSpan seed, size_t count, Rng &rng) {
    HavocOptions opts;
    opts.stack_max = cfg_.havoc_stack_max;
    opts.bytes_per_op = cfg_.havoc_bytes_per_op;
    opts.allow_resize = true;
    opts.max_len = program_->max_input_len;
    size_t done = 0;
    for (size_t i = 0; i < count; ++i) {
      Bytes x = HavocMutate(seed, opts, rng);
      if (!Execute(x)) break;
      ++done;
    }
    return done;
  }

  void Fail(const absl::Status &s) {
    if (error_.ok()) error_ = s;
  }

  uint64_t ElapsedNs() const {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start_)
            .count());
  }

  std::shared_ptr<const GuardProgram> program_;
  Harness harness_;
  CoverageMap cov_;
  FrontierTracker tracker_;
  FrontierSet frontier_;
  Scheduler scheduler_;
  Corpus corpus_;
  std::vector<Finding> findings_;
  ConvexityTracker convexity_;
  const CampaignConfig &cfg_;
  std::chrono::steady_clock::time_point start_;

  ExecutionTrace trace_;
  std::vector<BranchDistance> distances_;
  std::vector<EdgeId> fresh_;
  absl::flat_hash_map<NodeId, size_t> first_entry_;
  absl::flat_hash_set<Bytes> side_seen_;
  absl::flat_hash_set<NodeId> bug_seen_;

  uint64_t execs_ = 0;
  uint64_t t_ns_ = 0;
  uint64_t flips_ = 0;
  uint64_t new_edges_ = 0;
  uint64_t stage_probe_execs_ = 0;
  absl::Status error_;
};

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kFox:
      return "fox";
    case Mode::kFoxSched:
      return "sched";
    case Mode::kBase:
      return "base";
  }
  return "?";
}

std::optional<Mode> ParseMode(std::string_view name) {
  for (Mode m : {Mode::kFox, Mode::kFoxSched, Mode::kBase}) {
    if (ModeName(m) == name) return m;
  }
  return std::nullopt;
}

absl::Status ValidateCampaignConfig(const CampaignConfig &cfg) {
  if (!cfg.budget.max_execs && !cfg.budget.max_seconds) {
    return absl::InvalidArgumentError("budget needs an exec or time bound");
  }
  if (cfg.budget.max_seconds &&
      !(*cfg.budget.max_seconds >= 0 && std::isfinite(*cfg.budget.max_seconds))) {
    return absl::InvalidArgumentError("time budget must be finite and >= 0");
  }
  if (cfg.mutator.sample_size < 2) {
    return absl::InvalidArgumentError("sample size must be at least 2");
  }
  if (cfg.havoc_stack_max == 0 || cfg.havoc_bytes_per_op == 0) {
    return absl::InvalidArgumentError("havoc stack and block size must be positive");
  }
  return ValidateMutatorConfig(cfg.mutator);
}

std::string LogRecordToJson(const LogRecord &rec) {
  Json j;
  j["t_ns"] = rec.t_ns;
  j["execs"] = rec.execs;
  j["edges_covered"] = rec.edges_covered;
  j["frontier_size"] = rec.frontier_size;
  j["corpus_size"] = rec.corpus_size;
  j["flips"] = rec.flips;
  j["mode"] = std::string(ModeName(rec.mode));
  j["stage"] = rec.stage;
  if (rec.scheduled_branch) {
    j["scheduled_branch"] = *rec.scheduled_branch;
  } else {
    j["scheduled_branch"] = nullptr;
  }
  if (std::isfinite(rec.logprob)) {
    j["logprob"] = rec.logprob;
  } else {
    j["logprob"] = nullptr;
  }
  j["sc"] = rec.sc;
  j["new_edges"] = rec.new_edges;
  j["samples"] = rec.samples;
  j["newton_execs"] = rec.newton_execs;
  j["probe_execs"] = rec.probe_execs;
  j["findings"] = rec.findings;
  j["fallback"] = rec.fallback;
  return j.dump();
}

absl::StatusOr<LogRecord> ParseLogRecord(std::string_view line) {
  Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("stats record is not a JSON object");
  }
  LogRecord rec;
  try {
    rec.t_ns = j.at("t_ns").get<uint64_t>();
    rec.execs = j.at("execs").get<uint64_t>();
    rec.edges_covered = j.at("edges_covered").get<uint64_t>();
    rec.frontier_size = j.at("frontier_size").get<uint64_t>();
    rec.corpus_size = j.at("corpus_size").get<uint64_t>();
    rec.flips = j.at("flips").get<uint64_t>();
    std::optional<Mode> mode = ParseMode(j.at("mode").get<std::string>());
    if (!mode) return absl::InvalidArgumentError("unknown mode in stats record");
    rec.mode = *mode;
    rec.stage = j.at("stage").get<uint64_t>();
    if (!j.at("scheduled_branch").is_null()) {
      rec.scheduled_branch = j.at("scheduled_branch").get<NodeId>();
    }
    rec.logprob = j.at("logprob").is_null()
                      ? -std::numeric_limits<double>::infinity()
                      : j.at("logprob").get<double>();
    rec.sc = j.at("sc").get<uint64_t>();
    rec.new_edges = j.at("new_edges").get<uint64_t>();
    rec.samples = j.at("samples").get<uint64_t>();
    rec.newton_execs = j.at("newton_execs").get<uint64_t>();
    rec.probe_execs = j.at("probe_execs").get<uint64_t>();
    rec.findings = j.at("findings").get<uint64_t>();
    rec.fallback = j.at("fallback").get<bool>();
  } catch (const nlohmann::json::exception &e) {
    return absl::InvalidArgumentError(absl::StrCat("stats record: ", e.what()));
  }
  return rec;
}

absl::StatusOr<CampaignResult> RunCampaign(
    std::shared_ptr<const GuardProgram> program, std::span<const Bytes> seeds,
    const CampaignConfig &cfg, uint64_t rng_seed) {
  if (absl::Status s = ValidateCampaignConfig(cfg); !s.ok()) return s;
  if (seeds.empty()) return absl::InvalidArgumentError("no seeds");
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].empty()) {
      return absl::InvalidArgumentError(absl::StrCat("seed ", i, " is empty"));
    }
    if (seeds[i].size() > program->max_input_len) {
      return absl::InvalidArgumentError(
          absl::StrCat("seed ", i, " is ", seeds[i].size(),
                       " bytes, longer than max_input_len ",
                       program->max_input_len));
    }
  }

  CampaignState st(program, cfg);
  Rng rng(rng_seed);
  std::vector<LogRecord> log;

  auto record = [&](uint64_t stage) {
    LogRecord r;
    r.t_ns = cfg.time_mode == TimeMode::kWallClock ? st.ElapsedNs() : st.t_ns_;
    r.execs = st.execs_;
    r.edges_covered = st.cov_.edges_covered();
    r.frontier_size = st.frontier_.size();
    r.corpus_size = st.corpus_.entries.size();
    r.flips = st.flips_;
    r.mode = cfg.mode;
    r.stage = stage;
    r.findings = st.findings_.size();
    return r;
  };

  for (const Bytes &seed : seeds) st.Run(seed);
  {
    LogRecord r = record(0);
    r.new_edges = st.new_edges_;
    log.push_back(r);
  }

  size_t round_robin = 0;
  for (uint64_t stage = 1; !st.Exhausted() && st.error_.ok(); ++stage) {
    const uint64_t edges_before = st.new_edges_;
    st.stage_probe_execs_ = 0;
    const FrontierSet frontier = st.frontier_;
    LogRecord r;
    if (cfg.mode != Mode::kBase && !frontier.empty()) {
      if (absl::Status s = st.harness_.SetActiveSites(frontier.ids()); !s.ok()) {
        return s;
      }
      if (absl::Status s = st.Calibrate(frontier); !s.ok()) return s;
      if (st.Exhausted()) {
        r = record(stage);
      } else {
        absl::StatusOr<Selection> sel = st.scheduler_.SelectNext(frontier);
        if (!sel.ok()) return sel.status();
        StageReport rep;
        if (cfg.mode == Mode::kFox) {
          rep = MutateStage(sel->seed, frontier, cfg.mutator, st, rng,
                            cfg.probe_convexity ? &st : nullptr);
        } else {
          rep.samples = st.HavocBatch(sel->seed, cfg.mutator.sample_size, rng);
        }
        r = record(stage);
        r.scheduled_branch = sel->branch;
        r.logprob = sel->logprob;
        r.sc = sel->sc;
        r.samples = rep.samples;
        r.newton_execs = rep.newton_execs;
        r.probe_execs = rep.probe_execs + st.stage_probe_execs_;
      }
    } else {
      if (absl::Status s = st.harness_.SetActiveSites({}); !s.ok()) return s;
      const Bytes seed =
          st.corpus_.entries[round_robin++ % st.corpus_.entries.size()].input;
      const size_t done = st.HavocBatch(seed, cfg.mutator.sample_size, rng);
      r = record(stage);
      r.samples = done;
      r.fallback = cfg.mode != Mode::kBase;
    }
    r.new_edges = st.new_edges_ - edges_before;
    log.push_back(r);
  }
  if (!st.error_.ok()) return st.error_;

  CampaignResult result;
  result.log = std::move(log);
  result.corpus = std::move(st.corpus_);
  result.findings = std::move(st.findings_);
  result.execs = st.execs_;
  result.edges_covered = st.cov_.edges_covered();
  result.frontier = st.frontier_;
  result.convexity = st.convexity_.stats();
  return result;
}

namespace {

absl::Status WriteBytes(const std::filesystem::path &path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char *>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) {
    return absl::UnavailableError(absl::StrCat("cannot write ", path.string()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status WriteCampaignOutputs(const CampaignResult &result,
                                  const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "corpus", ec);
  if (!ec) std::filesystem::create_directories(dir / "findings", ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  {
    std::ofstream out(dir / "stats.jsonl", std::ios::trunc);
    for (const LogRecord &r : result.log) out << LogRecordToJson(r) << '\n';
    if (!out) return absl::UnavailableError("cannot write stats.jsonl");
  }
  for (const CorpusEntry &e : result.corpus.entries) {
    absl::Status s = WriteBytes(
        dir / "corpus" / absl::StrFormat("%08d", e.exec_index), e.input);
    if (!s.ok()) return s;
  }
  for (const Finding &f : result.findings) {
    absl::Status s = WriteBytes(
        dir / "findings" / absl::StrFormat("%08d", f.exec_index), f.input);
    if (!s.ok()) return s;
  }
  if (!result.convexity.empty()) {
    Json j = Json::object();
    for (const auto &[site, s] : result.convexity) {
      j[std::to_string(site)] = {{"passes", s.passes},
                                 {"fails", s.fails},
                                 {"no_probes", s.no_probes},
                                 {"ratio", s.ratio()}};
    }
    std::ofstream out(dir / "convexity.json", std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out) return absl::UnavailableError("cannot write convexity.json");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Bytes>> ReadSeedDir(const std::filesystem::path &dir) {
  std::error_code ec;
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) {
    return absl::NotFoundError(
        absl::StrCat("cannot list ", dir.string(), ": ", ec.message()));
  }
  std::sort(files.begin(), files.end());
  std::vector<Bytes> seeds;
  for (const auto &path : files) {
    std::ifstream in(path, std::ios::binary);
    seeds.emplace_back(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
    if (in.bad()) {
      return absl::UnavailableError(absl::StrCat("cannot read ", path.string()));
    }
  }
  return seeds;
}

}  // namespace frontierfuzz
