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

#include "frontierfuzz/mutator.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "absl/strings/str_cat.h"

namespace frontierfuzz {
namespace {

Wide Gcd(Wide a, Wide b) {
  a = AbsWide(a);
  b = AbsWide(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int BitWidth(Wide v) {
  absl::uint128 u = static_cast<absl::uint128>(AbsWide(v));
  int bits = 0;
  while (u != 0) {
    u >>= 1;
    ++bits;
  }
  return bits;
}

uint8_t ByteAt(ByteSpan s, size_t i) { return i < s.size() ? s[i] : 0; }

uint8_t ClampByte(Wide v) {
  if (v < 0) return 0;
  if (v > 255) return 255;
  return static_cast<uint8_t>(static_cast<uint64_t>(v));
}

const BranchObservation *FindObservation(const ExecutionTrace &trace,
                                         NodeId site, size_t *index) {
  for (size_t i = 0; i < trace.observations.size(); ++i) {
    if (trace.observations[i].site == site) {
      if (index != nullptr) *index = i;
      return &trace.observations[i];
    }
  }
  return nullptr;
}

bool UsesOperandSpace(const BranchObservation &obs) {
  return obs.kind == GuardKind::kInt && obs.operand.has_value();
}

// Forwards to another executor and tallies what it sees.
class CountingExecutor : public Executor {
 public:
  explicit CountingExecutor(Executor &inner) : inner_(inner) {}

  ExecResult Execute(ByteSpan input) override {
    ExecResult r = inner_.Execute(input);
    if (!r) {
      exhausted = true;
    } else {
      ++execs;
      flips += r.flips;
      new_edges += r.new_edges;
    }
    return r;
  }
  size_t max_input_len() const override { return inner_.max_input_len(); }
  bool fully_explored(NodeId site) const override {
    return inner_.fully_explored(site);
  }

  size_t execs = 0;
  size_t flips = 0;
  size_t new_edges = 0;
  bool exhausted = false;

 private:
  Executor &inner_;
};

}  // namespace

absl::Status ValidateMutatorConfig(const MutatorConfig &cfg) {
  if (cfg.sample_size < 2) {
    return absl::InvalidArgumentError("sample_size must be at least 2");
  }
  if (cfg.havoc_stack_max == 0) {
    return absl::InvalidArgumentError("havoc_stack_max must be positive");
  }
  if (cfg.havoc_bytes_per_op == 0) {
    return absl::InvalidArgumentError("havoc_bytes_per_op must be positive");
  }
  return absl::OkStatus();
}

HavocOptions LocalHavocOptions(const MutatorConfig &cfg) {
  HavocOptions opts;
  opts.stack_max = cfg.havoc_stack_max;
  opts.bytes_per_op = cfg.havoc_bytes_per_op;
  opts.allow_resize = false;
  return opts;
}

Slope Slope::Make(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Slope{num, den};
}

double Slope::value() const {
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

double Subgradient::L1() const {
  long double sum = 0;
  for (const auto &[pos, s] : components) {
    sum += std::fabs(static_cast<long double>(s.num) /
                     static_cast<long double>(s.den));
  }
  return static_cast<double>(sum);
}

Subgradient ComputeSubgradient(ByteSpan seed, ByteSpan mutant,
                               const BranchDistance &d_seed,
                               const BranchDistance &d_mut) {
  Subgradient g;
  g.space = GradientSpace::kBytes;
  Wide dd = d_mut.Magnitude() - d_seed.Magnitude();
  if (dd == 0) return g;
  size_t n = std::max(seed.size(), mutant.size());
  for (size_t j = 0; j < n; ++j) {
    int dx = static_cast<int>(ByteAt(mutant, j)) - ByteAt(seed, j);
    if (dx == 0) continue;
    g.components.emplace_back(static_cast<uint32_t>(j), Slope::Make(dd, dx));
  }
  return g;
}

Subgradient ComputeOperandSubgradient(const SiteSample &seed,
                                      const SiteSample &mutant) {
  Subgradient g;
  g.space = GradientSpace::kOperand;
  Wide dd = mutant.distance.Magnitude() - seed.distance.Magnitude();
  Wide df = mutant.obs.f_value - seed.obs.f_value;
  if (dd == 0 || df == 0) return g;
  uint32_t offset = seed.obs.operand ? seed.obs.operand->offset : 0;
  g.components.emplace_back(offset, Slope::Make(dd, df));
  return g;
}

absl::StatusOr<Bytes> NewtonStep(ByteSpan witness, Wide delta,
                                 const Subgradient &g) {
  if (g.zero()) {
    return absl::InvalidArgumentError("Newton step on a zero subgradient");
  }
  Bytes out(witness.begin(), witness.end());
  for (const auto &[pos, s] : g.components) {
    if (pos >= out.size()) out.resize(pos + 1, 0);
    Wide x = out[pos];
    // x - delta * den / num, rounded as one division.
    out[pos] = ClampByte(RoundDiv(x * s.num - delta * s.den, s.num));
  }
  return out;
}

absl::StatusOr<Bytes> OperandNewtonStep(ByteSpan witness,
                                        const SiteSample &witness_sample,
                                        const Subgradient &g) {
  if (g.zero()) {
    return absl::InvalidArgumentError("Newton step on a zero subgradient");
  }
  if (!witness_sample.obs.operand) {
    return absl::InvalidArgumentError(
        absl::StrCat("site ", witness_sample.obs.site, " has no operand"));
  }
  const OperandSpec &spec = *witness_sample.obs.operand;
  const Slope &s = g.components.front().second;
  Wide delta = witness_sample.distance.Magnitude();
  Wide v = ReadOperand(witness, spec);
  Wide lo = OperandMin(spec);
  Wide hi = OperandMax(spec);
  Wide target;
  if (BitWidth(delta) + BitWidth(s.den) < 126) {
    target = v - RoundDiv(delta * s.den, s.num);
  } else {
    long double step = static_cast<long double>(delta) *
                       static_cast<long double>(s.den) /
                       static_cast<long double>(s.num);
    long double t = static_cast<long double>(v) - step;
    if (t <= static_cast<long double>(lo)) {
      target = lo;
    } else if (t >= static_cast<long double>(hi)) {
      target = hi;
    } else {
      target = static_cast<Wide>(std::llroundl(t));
    }
  }
  target = std::clamp(target, lo, hi);
  Bytes out(witness.begin(), witness.end());
  WriteOperand(out, spec, target);
  return out;
}

Bytes HotByteNewtonStep(ByteSpan witness, const SiteSample &witness_sample,
                        const HotByteSet &hot, size_t max_len) {
  Bytes out(witness.begin(), witness.end());
  const BranchObservation &obs = witness_sample.obs;
  if (hot.sensitivity.num == 0) return out;
  for (uint32_t j : hot.offsets) {
    if (j >= max_len) continue;
    int64_t c = static_cast<int64_t>(j) - hot.window_start;
    if (c < 0 || c >= static_cast<int64_t>(obs.byte_diffs.size())) continue;
    Wide d = obs.byte_diffs[c];
    Wide h = ApplyDistanceRule(obs.outcome, obs.relation, d);
    if (h == 0) continue;
    Wide dh = ApplyDistanceRule(obs.outcome, obs.relation, d + 1) - h;
    if (dh == 0) continue;
    // Chain rule: d(dist)/dx = h'(d) * sensitivity.
    Wide num = dh * hot.sensitivity.num;
    Wide den = hot.sensitivity.den;
    if (j >= out.size()) out.resize(j + 1, 0);
    Wide x = out[j];
    out[j] = ClampByte(RoundDiv(x * num - h * den, num));
  }
  return out;
}

LocalSearchResult LocalSearch(ByteSpan seed, const FrontierSet &frontier,
                              const MutatorConfig &cfg, Rng &rng,
                              Executor &executor) {
  LocalSearchResult res;
  ExecResult base = executor.Execute(seed);
  if (!base) return res;
  for (size_t i = 0; i < base.trace->observations.size(); ++i) {
    const BranchObservation &obs = base.trace->observations[i];
    if (!frontier.contains(obs.site)) continue;
    res.seed_samples.emplace(obs.site, SiteSample{obs, base.distances[i]});
  }
  if (res.seed_samples.empty() || seed.empty()) return res;

  HavocOptions opts = LocalHavocOptions(cfg);
  opts.max_len = seed.size();
  for (size_t k = 0; k < cfg.sample_size; ++k) {
    Bytes x = HavocMutate(seed, opts, rng);
    ExecResult r = executor.Execute(x);
    if (!r) break;
    ++res.samples;
    for (size_t i = 0; i < r.trace->observations.size(); ++i) {
      const BranchObservation &obs = r.trace->observations[i];
      auto seed_it = res.seed_samples.find(obs.site);
      if (seed_it == res.seed_samples.end()) continue;
      SiteSample sample{obs, r.distances[i]};
      Subgradient g =
          UsesOperandSpace(seed_it->second.obs)
              ? ComputeOperandSubgradient(seed_it->second, sample)
              : ComputeSubgradient(seed, x, seed_it->second.distance,
                                   sample.distance);
      auto it = res.records.find(obs.site);
      if (it == res.records.end()) {
        res.records.emplace(obs.site,
                            SubgradientRecord{std::move(g), x, std::move(sample)});
      } else if (g.L1() > it->second.g.L1()) {
        it->second = SubgradientRecord{std::move(g), x, std::move(sample)};
      }
    }
  }
  return res;
}

HotByteSet InferHotBytes(ByteSpan seed, ByteSpan mutant, NodeId site,
                         Executor &executor) {
  HotByteSet hot;
  hot.site = site;
  ExecResult base = executor.Execute(seed);
  if (!base) return hot;
  size_t idx = 0;
  const BranchObservation *obs = FindObservation(*base.trace, site, &idx);
  if (obs == nullptr) {
    hot.probe_execs = 1;
    return hot;
  }
  SiteSample sample{*obs, base.distances[idx]};
  hot = InferHotBytes(seed, sample, mutant, site, executor);
  ++hot.probe_execs;
  return hot;
}

HotByteSet InferHotBytes(ByteSpan seed, const SiteSample &seed_sample,
                         ByteSpan mutant, NodeId site, Executor &executor) {
  HotByteSet hot;
  hot.site = site;
  hot.compared_length = seed_sample.obs.compared_length;
  size_t n = std::max(seed.size(), mutant.size());
  for (size_t p = 0; p < n; ++p) {
    uint8_t xm = ByteAt(mutant, p);
    uint8_t xs = ByteAt(seed, p);
    if (xm == xs) continue;
    Bytes probe(seed.begin(), seed.end());
    if (p >= probe.size()) probe.resize(p + 1, 0);
    probe[p] = xm;
    ExecResult r = executor.Execute(probe);
    if (!r) break;
    ++hot.probe_execs;
    size_t idx = 0;
    const BranchObservation *obs = FindObservation(*r.trace, site, &idx);
    if (obs == nullptr || r.distances[idx] == seed_sample.distance) continue;
    const auto &before = seed_sample.obs.byte_diffs;
    const auto &after = obs->byte_diffs;
    size_t len = std::max(before.size(), after.size());
    size_t c = 0;
    while (c < len && (c < before.size() ? before[c] : 0) ==
                          (c < after.size() ? after[c] : 0)) {
      ++c;
    }
    if (c == len) continue;
    int ddiff = (c < after.size() ? after[c] : 0) -
                (c < before.size() ? before[c] : 0);
    hot.sensitivity = Slope::Make(ddiff, static_cast<int>(xm) - xs);
    hot.window_start = static_cast<int64_t>(p) - static_cast<int64_t>(c);
    int64_t begin = std::max<int64_t>(hot.window_start, 0);
    int64_t end = std::min<int64_t>(hot.window_start + hot.compared_length,
                                    static_cast<int64_t>(executor.max_input_len()));
    for (int64_t j = begin; j < end; ++j) {
      hot.offsets.push_back(static_cast<uint32_t>(j));
    }
    break;
  }
  return hot;
}

StageReport MutateStage(ByteSpan seed, const FrontierSet &frontier,
                        const MutatorConfig &cfg, Executor &executor, Rng &rng,
                        NewtonObserver *observer) {
  CountingExecutor counted(executor);
  StageReport report;
  LocalSearchResult ls = LocalSearch(seed, frontier, cfg, rng, counted);
  report.samples = ls.samples;
  for (const auto &[site, rec] : ls.records) {
    if (counted.exhausted) break;
    if (rec.g.zero() || counted.fully_explored(site)) continue;
    const SiteSample &seed_sample = ls.seed_samples.at(site);
    absl::StatusOr<Bytes> next;
    if (rec.sample.obs.kind == GuardKind::kStr) {
      HotByteSet hot =
          InferHotBytes(seed, seed_sample, rec.witness, site, counted);
      report.probe_execs += hot.probe_execs;
      if (hot.offsets.empty()) {
        next = NewtonStep(rec.witness, rec.sample.distance.Magnitude(), rec.g);
      } else {
        next = HotByteNewtonStep(rec.witness, rec.sample, hot,
                                 counted.max_input_len());
      }
    } else if (rec.g.space == GradientSpace::kOperand) {
      next = OperandNewtonStep(rec.witness, rec.sample, rec.g);
    } else {
      next = NewtonStep(rec.witness, rec.sample.distance.Magnitude(), rec.g);
    }
    if (!next.ok() || *next == rec.witness) continue;
    if (next->size() > counted.max_input_len()) {
      next->resize(counted.max_input_len());
    }
    ExecResult r = counted.Execute(*next);
    if (!r) break;
    ++report.newton_execs;
    if (observer != nullptr) {
      observer->OnNewton(site, rec.witness, rec.sample.distance, *next, r);
    }
  }
  report.execs = counted.execs;
  report.flips = counted.flips;
  report.new_edges = counted.new_edges;
  return report;
}

}  // namespace frontierfuzz
