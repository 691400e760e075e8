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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are the constants below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "frontierfuzz/branch_distance.h"
#include "frontierfuzz/builtin_targets.h"
#include "frontierfuzz/campaign.h"
#include "frontierfuzz/convexity.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/mutator.h"
#include "frontierfuzz/report.h"

#ifndef FRONTIERFUZZ_CLI
#error "FRONTIERFUZZ_CLI must name the frontierfuzz binary"
#endif

namespace frontierfuzz {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTableSeconds = 1.0;
constexpr double kWorkedExampleSeconds = 1.0;
constexpr size_t kTheoremTrials = 200;
constexpr double kTheoremSeconds = 10.0;
constexpr uint64_t kSuiteExecs = 200000;
constexpr int kSuiteSeeds = 10;
constexpr double kSuiteSeconds = 15 * 60;
constexpr size_t kSuiteTargets = 8;
constexpr size_t kOrderingMinTargets = 6;
constexpr uint64_t kChainDepth = 6;
constexpr uint64_t kChainFoxExecs = 200000;
constexpr uint64_t kChainBaseExecs = 3000000;
constexpr int kConvexPairs = 100;
constexpr int kHotByteSeeds = 10;
constexpr int kHotByteMinHits = 9;

bool all_passed = true;

void Report(int id, bool pass, const std::string &detail) {
  all_passed &= pass;
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<const GuardProgram> Builtin(std::string_view name) {
  auto p = ResolveTarget(absl::StrCat("builtin:", std::string(name)));
  if (!p.ok()) {
    std::fprintf(stderr, "%s\n", std::string(p.status().message()).c_str());
    std::exit(2);
  }
  return *p;
}

// Runs a shell command, returning its exit status and stdout.
std::pair<int, std::string> Shell(const std::string &cmd) {
  std::string out;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, out};
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Cli() { return FRONTIERFUZZ_CLI; }

std::filesystem::path Scratch(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "frontierfuzz_acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Minimal harness-backed executor.
class SiteExecutor : public Executor {
 public:
  SiteExecutor(std::shared_ptr<const GuardProgram> p, std::vector<NodeId> sites)
      : harness_(p), cov_(p) {
    (void)harness_.SetActiveSites(sites);
  }
  ExecResult Execute(ByteSpan input) override {
    harness_.Execute(input, trace_);
    distances_.clear();
    for (const auto &obs : trace_.observations) distances_.push_back(*DistanceOf(obs));
    std::vector<EdgeId> fresh;
    size_t added = *cov_.Absorb(trace_, &fresh);
    size_t flips = 0;
    for (EdgeId e : fresh) flips += cov_.edge_hit(SiblingEdge(e));
    return ExecResult{&trace_, distances_, added, flips};
  }
  size_t max_input_len() const override { return harness_.program().max_input_len; }
  bool fully_explored(NodeId site) const override { return cov_.fully_explored(site); }
  const CoverageMap &coverage() const { return cov_; }

 private:
  Harness harness_;
  CoverageMap cov_;
  ExecutionTrace trace_;
  std::vector<BranchDistance> distances_;
};

// 1. Every consistent (outcome, relation) pair and f in [-3, 3] against a
// literal transcription of the distance table.
void TableConformance() {
  auto start = Clock::now();
  struct Row {
    bool q;
    Relation r;
    std::function<long(long)> d;
  };
  const std::vector<Row> rows = {
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
  int checked = 0, mismatches = 0;
  for (const Row &row : rows) {
    for (long f = -3; f <= 3; ++f) {
      if (Holds(row.r, f) != row.q) continue;
      absl::StatusOr<Wide> d = Distance(row.q, row.r, f);
      ++checked;
      if (!d.ok() || *d != Wide(row.d(f))) ++mismatches;
    }
  }
  double secs = Since(start);
  Report(1, mismatches == 0 && checked > 0 && secs < kTableSeconds,
         absl::StrCat(checked, " cases, ", mismatches, " mismatches, ", secs, " s"));
}

// 2. x <= 15 from x = 5: distance 11, local search + Newton gives 16.
void WorkedExample() {
  auto start = Clock::now();
  auto p = Builtin("le15");
  Harness h(p);
  (void)h.SetActiveSites(std::vector<NodeId>{0});
  const Bytes seed = {5};
  ExecutionTrace t = h.Execute(seed);
  Wide d = DistanceOf(t.observations.at(0))->scalar;

  SiteExecutor ex(p, {0});
  Rng rng(0);
  MutatorConfig cfg;
  LocalSearchResult ls = LocalSearch(seed, FrontierSet({0}), cfg, rng, ex);
  std::optional<Bytes> produced;
  if (ls.records.count(0) && !ls.records.at(0).g.zero()) {
    const SubgradientRecord &rec = ls.records.at(0);
    auto x = OperandNewtonStep(rec.witness, rec.sample, rec.g);
    if (x.ok()) produced = *x;
  }
  bool flips = produced && h.Execute(*produced).edges ==
                               std::vector<EdgeId>{NotTakenEdge(0)};
  double secs = Since(start);
  Report(2, d == 11 && produced == Bytes{16} && flips && secs < kWorkedExampleSeconds,
         absl::StrCat("delta=", static_cast<int64_t>(d), ", newton input=",
                      produced ? absl::StrCat(int{(*produced)[0]}) : "none",
                      flips ? ", flips" : ", no flip", ", ", secs, " s"));
}

// 3. verify-theorem over random instances.
void Theorem() {
  auto start = Clock::now();
  auto [status, out] = Shell(absl::StrCat(
      Cli(), " verify-theorem --branches 4 --stages 6 --trials ", kTheoremTrials,
      " --rng-seed 2026"));
  double secs = Since(start);
  std::string want = absl::StrCat("optimal ", kTheoremTrials, "/", kTheoremTrials);
  std::string summary = out.substr(out.rfind("optimal "));
  while (!summary.empty() && summary.back() == '\n') summary.pop_back();
  Report(3, status == 0 && summary == want && secs < kTheoremSeconds,
         absl::StrCat(summary, ", ", secs, " s"));
}

double Median(std::vector<double> v) { return Percentile(std::move(v), 0.5); }

// Final edges per (target, mode) over the suite seeds.
std::map<std::string, std::map<Mode, std::vector<double>>> suite_edges;
double suite_seconds = 0;

void RunSuite() {
  auto start = Clock::now();
  for (const BuiltinTarget &t : BuiltinTargets()) {
    if (!t.in_suite) continue;
    auto p = Builtin(t.name);
    std::vector<Bytes> seeds = {Bytes(p->max_input_len, 0)};
    for (Mode mode : {Mode::kFox, Mode::kFoxSched, Mode::kBase}) {
      for (int s = 0; s < kSuiteSeeds; ++s) {
        CampaignConfig cfg;
        cfg.mode = mode;
        cfg.budget.max_execs = kSuiteExecs;
        auto r = RunCampaign(p, seeds, cfg, static_cast<uint64_t>(s));
        suite_edges[std::string(t.name)][mode].push_back(
            r.ok() ? static_cast<double>(r->edges_covered) : -1);
      }
    }
  }
  suite_seconds = Since(start);
}

// 4. Coverage ordering at the suite budget.
void CoverageOrdering() {
  size_t targets = 0, fox_ge_base = 0;
  bool full = true, strict = true;
  std::string detail;
  for (const BuiltinTarget &t : BuiltinTargets()) {
    if (!t.in_suite) continue;
    ++targets;
    auto p = Builtin(t.name);
    auto &m = suite_edges[std::string(t.name)];
    double fox = Median(m[Mode::kFox]), base = Median(m[Mode::kBase]);
    fox_ge_base += fox >= base;
    if (t.linear && fox != static_cast<double>(p->guard_edge_count())) full = false;
    if ((t.name == "magic32" || t.name == "magic32_be" || t.name == "magic_string") &&
        !(fox > base)) {
      strict = false;
    }
    absl::StrAppend(&detail, std::string(t.name), " fox=", fox, " base=", base, "/",
                    p->guard_edge_count(), "; ");
  }
  Report(4,
         targets >= kSuiteTargets && full && strict &&
             fox_ge_base >= kOrderingMinTargets && suite_seconds < kSuiteSeconds,
         absl::StrCat(detail, "fox>=base on ", fox_ge_base, "/", targets,
                      full ? ", full coverage on linear targets" : ", NOT full",
                      strict ? "" : ", magic targets not strictly better", ", ",
                      suite_seconds, " s"));
}

// 5. FOX >= FOX_SCHED >= BASE medians.
void Ablation() {
  size_t targets = 0, ordered = 0;
  std::string detail;
  for (const BuiltinTarget &t : BuiltinTargets()) {
    if (!t.in_suite) continue;
    ++targets;
    auto &m = suite_edges[std::string(t.name)];
    double fox = Median(m[Mode::kFox]), sched = Median(m[Mode::kFoxSched]),
           base = Median(m[Mode::kBase]);
    ordered += fox >= sched && sched >= base;
    absl::StrAppend(&detail, std::string(t.name), " ", fox, ">=", sched, ">=", base, "; ");
  }
  Report(5, ordered >= kOrderingMinTargets,
         absl::StrCat(detail, "ordered on ", ordered, "/", targets));
}

std::vector<LogRecord> ReadStats(const std::filesystem::path &dir) {
  auto r = ReadStatsFile(dir / "stats.jsonl");
  return r.ok() ? *r : std::vector<LogRecord>{};
}

// 6. Frontier size against corpus size on the depth-6 chain.
void ControlSpace() {
  auto fox_dir = Scratch("chain_fox"), base_dir = Scratch("chain_base");
  auto run = [](const std::string &mode, uint64_t execs,
                const std::filesystem::path &dir) {
    return Shell(absl::StrCat(Cli(), " run --target builtin:nested_chain --mode ",
                              mode, " --budget-execs ", execs, " --out ",
                              dir.string(), " --rng-seed 1 --synthetic-time"))
        .first;
  };
  int fs = run("fox", kChainFoxExecs, fox_dir);
  int bs = run("base", kChainBaseExecs, base_dir);
  uint64_t max_frontier = 0;
  for (const LogRecord &r : ReadStats(fox_dir)) {
    max_frontier = std::max(max_frontier, r.frontier_size);
  }
  std::optional<uint64_t> base_corpus;
  for (const LogRecord &r : ReadStats(base_dir)) {
    if (r.edges_covered == 2 * kChainDepth) {
      base_corpus = r.corpus_size;
      break;
    }
  }
  Report(6,
         fs == 0 && bs == 0 && max_frontier <= kChainDepth && base_corpus &&
             *base_corpus >= kChainDepth + 1,
         absl::StrCat("fox max frontier=", max_frontier, ", base corpus at full coverage=",
                      base_corpus ? absl::StrCat(*base_corpus) : "never reached"));
}

// An input reaching `site`, taken from a FOX campaign's corpus.
std::optional<Bytes> ReachingInput(std::shared_ptr<const GuardProgram> p,
                                   const CampaignResult &r, NodeId site) {
  Harness h(p);
  for (const CorpusEntry &e : r.corpus.entries) {
    for (EdgeId edge : h.Execute(e.input).edges) {
      if (EdgeSource(edge) == site) return e.input;
    }
  }
  return std::nullopt;
}

int Sign(Wide v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Two inputs that differ from `base` only in the operand bytes of `node`,
// drawn so the site's distance is one linear piece between them: same
// outcome, same operand-difference signs, same byte parities (so the
// byte-wise midpoint is the exact average), and for signed integers the
// same sign bit.
std::optional<std::pair<Bytes, Bytes>> LinearPiecePair(const Harness &h,
                                                       const GuardNode &node,
                                                       const Bytes &base, Rng &rng) {
  const uint32_t span = node.span();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Bytes a = base, b = base;
    a.resize(std::max<size_t>(a.size(), node.offset + span), 0);
    b.resize(a.size(), 0);
    for (uint32_t i = 0; i < span; ++i) {
      uint8_t x = static_cast<uint8_t>(rng());
      uint8_t y = static_cast<uint8_t>((rng() & 0xFE) | (x & 1));
      a[node.offset + i] = x;
      b[node.offset + i] = y;
    }
    if (node.kind == GuardKind::kInt && node.is_signed) {
      size_t msb = node.offset + (node.endian == Endian::kLittle ? span - 1 : 0);
      b[msb] = static_cast<uint8_t>((b[msb] & 0x7F) | (a[msb] & 0x80));
    }
    auto obs = [&](const Bytes &in) -> std::optional<BranchObservation> {
      for (const auto &o : h.Execute(in).observations) {
        if (o.site == node.id) return o;
      }
      return std::nullopt;
    };
    auto oa = obs(a), ob = obs(b);
    if (!oa || !ob || oa->outcome != ob->outcome) continue;
    if (node.kind == GuardKind::kStr) {
      bool same = true;
      for (size_t i = 0; i < oa->byte_diffs.size(); ++i) {
        same &= Sign(oa->byte_diffs[i]) == Sign(ob->byte_diffs[i]);
      }
      if (!same) continue;
    } else if (Sign(oa->f_value) != Sign(ob->f_value)) {
      continue;
    }
    return std::make_pair(a, b);
  }
  return std::nullopt;
}

// 7. Midpoint convexity: equality on linear guards, failures on xor.
void Convexity() {
  Rng rng(7);
  size_t guards = 0, exact_guards = 0;
  std::string bad;
  for (const BuiltinTarget &t : BuiltinTargets()) {
    if (!t.linear) continue;
    auto p = Builtin(t.name);
    CampaignConfig cfg;
    cfg.budget.max_execs = kSuiteExecs;
    auto r = RunCampaign(p, std::vector<Bytes>{Bytes(p->max_input_len, 0)}, cfg, 0);
    if (!r.ok()) continue;
    for (const GuardNode &node : p->nodes) {
      if (!node.is_guard()) continue;
      ++guards;
      Harness h(p);
      (void)h.SetActiveSites(std::vector<NodeId>{node.id});
      auto base = ReachingInput(p, *r, node.id);
      int equal = 0;
      for (int i = 0; base && i < kConvexPairs; ++i) {
        auto pair = LinearPiecePair(h, node, *base, rng);
        if (!pair) break;
        auto d1 = SiteDistance(h, node.id, pair->first);
        auto d2 = SiteDistance(h, node.id, pair->second);
        auto dm = SiteDistance(h, node.id, Midpoint(pair->first, pair->second));
        if (d1 && d2 && dm && 2 * dm->Magnitude() == d1->Magnitude() + d2->Magnitude()) {
          ++equal;
        }
      }
      if (equal == kConvexPairs) {
        ++exact_guards;
      } else {
        absl::StrAppend(&bad, " ", std::string(t.name), "#", node.id, "=", equal);
      }
    }
  }

  auto xp = Builtin("xor_guard");
  Harness xh(xp);
  (void)xh.SetActiveSites(std::vector<NodeId>{0});
  ConvexityTracker tracker;
  for (int i = 0; i < kConvexPairs; ++i) {
    Bytes a(4), b(4);
    for (auto &x : a) x = static_cast<uint8_t>(rng());
    for (auto &x : b) x = static_cast<uint8_t>(rng());
    auto outcome = ConvexityProbe(0, a, b, xh);
    if (outcome.ok()) tracker.Record(0, *outcome);
  }
  uint64_t xor_fails = tracker.stats().count(0) ? tracker.stats().at(0).fails : 0;
  Report(7, guards > 0 && exact_guards == guards && xor_fails >= 1,
         absl::StrCat(exact_guards, "/", guards,
                      " linear guards exact on all pairs", bad, "; xor failures ",
                      xor_fails, "/", kConvexPairs));
}

// 8. Hot-byte window on the magic string target.
void HotBytes() {
  auto p = Builtin("magic_string");
  const GuardNode &node = p->nodes[0];
  std::vector<uint32_t> truth;
  for (uint32_t i = 0; i < node.length; ++i) truth.push_back(node.offset + i);
  int hits = 0;
  for (int s = 0; s < kHotByteSeeds; ++s) {
    Rng rng(s);
    Bytes seed(p->max_input_len);
    for (auto &b : seed) b = static_cast<uint8_t>(rng());
    SiteExecutor ex(p, {0});
    MutatorConfig cfg;
    LocalSearchResult ls = LocalSearch(seed, FrontierSet({0}), cfg, rng, ex);
    if (!ls.records.count(0)) continue;
    HotByteSet hot = InferHotBytes(seed, ls.seed_samples.at(0),
                                   ls.records.at(0).witness, 0, ex);
    hits += hot.offsets == truth;
  }
  Report(8, hits >= kHotByteMinHits,
         absl::StrCat(hits, "/", kHotByteSeeds, " seeds inferred offsets ", truth.front(),
                      "..", truth.back()));
}

// 9. Identical flags give byte-identical stats.jsonl.
void Determinism() {
  std::string contents[2];
  int status[2];
  for (int i = 0; i < 2; ++i) {
    auto dir = Scratch(absl::StrCat("determinism", i));
    status[i] = Shell(absl::StrCat(Cli(), " run --target builtin:mixed_tree --mode fox",
                                   " --budget-execs 50000 --out ", dir.string(),
                                   " --rng-seed 42 --synthetic-time"))
                    .first;
    std::ifstream in(dir / "stats.jsonl", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    contents[i] = ss.str();
  }
  Report(9,
         status[0] == 0 && status[1] == 0 && !contents[0].empty() &&
             contents[0] == contents[1],
         absl::StrCat(contents[0].size(), " bytes, ",
                      contents[0] == contents[1] ? "identical" : "different"));
}

}  // namespace
}  // namespace frontierfuzz

int main() {
  using namespace frontierfuzz;
  TableConformance();
  WorkedExample();
  Theorem();
  RunSuite();
  CoverageOrdering();
  Ablation();
  ControlSpace();
  Convexity();
  HotBytes();
  Determinism();
  std::printf("%s\n", all_passed ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_passed ? 0 : 1;
}
