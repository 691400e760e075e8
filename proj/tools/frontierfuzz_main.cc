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

// frontierfuzz command-line front end.
//
//   frontierfuzz run --target builtin:magic32 --mode fox --budget-execs 50000 \
//       --out out/ --synthetic-time
//   frontierfuzz report --out out/
//   frontierfuzz verify-theorem --branches 4 --stages 6 --trials 200
//   frontierfuzz targets

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_join.h"
#include "frontierfuzz/builtin_targets.h"
#include "frontierfuzz/campaign.h"
#include "frontierfuzz/oracle_verify.h"
#include "frontierfuzz/report.h"

namespace frontierfuzz {
namespace {

struct RunFlags {
  std::string target;
  std::string mode = "fox";
  std::optional<uint64_t> budget_execs;
  std::optional<double> budget_secs;
  std::string seeds;
  std::string out;
  uint64_t rng_seed = 0;
  size_t sample_size = 1024;
  bool synthetic_time = false;
  bool probe_convexity = false;
};

int Fail(const absl::Status &s) {
  std::cerr << "error: " << s << "\n";
  return 1;
}

int DoRun(const RunFlags &flags) {
  absl::StatusOr<std::shared_ptr<const GuardProgram>> program =
      ResolveTarget(flags.target);
  if (!program.ok()) return Fail(program.status());
  std::optional<Mode> mode = ParseMode(flags.mode);
  if (!mode) {
    return Fail(absl::InvalidArgumentError("mode must be fox, sched or base"));
  }

  std::vector<Bytes> seeds;
  if (!flags.seeds.empty()) {
    absl::StatusOr<std::vector<Bytes>> loaded = ReadSeedDir(flags.seeds);
    if (!loaded.ok()) return Fail(loaded.status());
    seeds = *std::move(loaded);
    if (seeds.empty()) {
      return Fail(absl::InvalidArgumentError("seed directory is empty"));
    }
  } else {
    seeds.push_back(Bytes((*program)->max_input_len, 0));
  }

  CampaignConfig cfg;
  cfg.mode = *mode;
  cfg.budget.max_execs = flags.budget_execs;
  cfg.budget.max_seconds = flags.budget_secs;
  cfg.mutator.sample_size = flags.sample_size;
  cfg.mutator.rng_seed = flags.rng_seed;
  cfg.time_mode =
      flags.synthetic_time ? TimeMode::kSynthetic : TimeMode::kWallClock;
  cfg.probe_convexity = flags.probe_convexity;

  absl::StatusOr<CampaignResult> result =
      RunCampaign(*program, seeds, cfg, flags.rng_seed);
  if (!result.ok()) return Fail(result.status());
  if (absl::Status s = WriteCampaignOutputs(*result, flags.out); !s.ok()) {
    return Fail(s);
  }
  std::printf("execs=%llu edges=%llu/%zu frontier=%zu corpus=%zu findings=%zu\n",
              static_cast<unsigned long long>(result->execs),
              static_cast<unsigned long long>(result->edges_covered),
              (*program)->guard_edge_count(), result->frontier.size(),
              result->corpus.entries.size(), result->findings.size());
  return 0;
}

int DoReport(const std::string &dir) {
  absl::StatusOr<std::vector<ReportRow>> rows = WriteReport(dir);
  if (!rows.ok()) return Fail(rows.status());
  std::printf("wrote %zu rows to %s/report.csv\n", rows->size(), dir.c_str());
  return 0;
}

std::string FormatSchedule(const std::vector<size_t> &s) {
  return absl::StrCat("(", absl::StrJoin(s, ","), ")");
}

int DoVerify(size_t max_branches, size_t max_stages, size_t trials,
             uint64_t rng_seed) {
  Rng rng(rng_seed);
  size_t optimal = 0;
  for (size_t t = 0; t < trials; ++t) {
    const size_t m = 1 + RandBelow(rng, max_branches);
    const size_t k = 1 + RandBelow(rng, max_stages);
    AbstractInstance inst = RandomGridInstance(m, k, rng);
    absl::StatusOr<VerifyResult> r = Verify(inst);
    if (!r.ok()) return Fail(r.status());
    std::vector<std::string> ps;
    for (const Rational &p : inst.p) ps.push_back(FormatRational(p));
    std::printf("trial %zu m=%zu K=%zu p=(%s) greedy=%s value=%s optimum=%s %s\n",
                t, m, k, absl::StrJoin(ps, ",").c_str(),
                FormatSchedule(r->greedy).c_str(),
                FormatRational(r->greedy_value).c_str(),
                FormatRational(r->optimum_value).c_str(),
                r->optimal ? "optimal" : "SUBOPTIMAL");
    optimal += r->optimal;
  }
  std::printf("optimal %zu/%zu\n", optimal, trials);
  return optimal == trials ? 0 : 1;
}

int DoTargets() {
  for (const BuiltinTarget &t : BuiltinTargets()) {
    std::printf("builtin:%s%s%s\n", std::string(t.name).c_str(),
                t.in_suite ? "" : " (fixture)", t.linear ? "" : " (nonlinear)");
  }
  return 0;
}

}  // namespace
}  // namespace frontierfuzz

int main(int argc, char **argv) {
  using namespace frontierfuzz;
  CLI::App app{"Frontier-scheduled, distance-guided greybox fuzzer"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App *run_cmd = app.add_subcommand("run", "Run one fuzzing campaign");
  run_cmd->add_option("--target", run.target, "PATH or builtin:NAME")->required();
  run_cmd->add_option("--mode", run.mode, "fox | sched | base")
      ->check(CLI::IsMember({"fox", "sched", "base"}));
  auto *execs = run_cmd->add_option("--budget-execs", run.budget_execs,
                                    "Stop after N executions");
  auto *secs = run_cmd->add_option("--budget-secs", run.budget_secs,
                                   "Stop after S seconds of campaign time")
                   ->check(CLI::NonNegativeNumber);
  execs->excludes(secs);
  run_cmd->add_option("--seeds", run.seeds, "Directory of seed inputs")
      ->check(CLI::ExistingDirectory);
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--rng-seed", run.rng_seed, "Campaign RNG seed");
  run_cmd->add_option("--sample-size", run.sample_size,
                      "Mutants per stage")
      ->check(CLI::Range(size_t{2}, size_t{1} << 30));
  run_cmd->add_flag("--synthetic-time", run.synthetic_time,
                    "Count one time unit per execution");
  run_cmd->add_flag("--probe-convexity", run.probe_convexity,
                    "Midpoint-probe Newton inputs; writes convexity.json");

  std::string report_dir;
  CLI::App *report_cmd =
      app.add_subcommand("report", "Fold stats.jsonl files into report.csv");
  report_cmd->add_option("--out", report_dir, "Directory to scan")
      ->required()
      ->check(CLI::ExistingDirectory);

  size_t branches = 4, stages = 6, trials = 200;
  uint64_t verify_seed = 0;
  CLI::App *verify_cmd = app.add_subcommand(
      "verify-theorem", "Check greedy scheduling against exhaustive search");
  verify_cmd->add_option("--branches", branches, "Maximum branch count")
      ->check(CLI::Range(1, 16));
  verify_cmd->add_option("--stages", stages, "Maximum stage count")
      ->check(CLI::Range(1, 32));
  verify_cmd->add_option("--trials", trials, "Random instances");
  verify_cmd->add_option("--rng-seed", verify_seed, "Instance RNG seed");

  CLI::App *targets_cmd = app.add_subcommand("targets", "List builtin targets");

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) {
    if (!run.budget_execs && !run.budget_secs) {
      std::cerr << "error: one of --budget-execs or --budget-secs is required\n";
      return 2;
    }
    return DoRun(run);
  }
  if (*report_cmd) return DoReport(report_dir);
  if (*verify_cmd) return DoVerify(branches, stages, trials, verify_seed);
  if (*targets_cmd) return DoTargets();
  return 2;
}
