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

#include "frontierfuzz/oracle_verify.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace frontierfuzz {
namespace {

// survive[b][n] = (1 - p_b)^n for n in [0, K].
std::vector<std::vector<Rational>> SurvivalTable(const AbstractInstance &inst) {
  std::vector<std::vector<Rational>> table(inst.p.size());
  for (size_t b = 0; b < inst.p.size(); ++b) {
    table[b].resize(inst.stages + 1);
    table[b][0] = 1;
    for (size_t n = 1; n <= inst.stages; ++n) {
      table[b][n] = table[b][n - 1] * (1 - inst.p[b]);
    }
  }
  return table;
}

Rational CoverageFromCounts(const std::vector<std::vector<Rational>> &survive,
                            const std::vector<size_t> &counts) {
  Rational sum = 0;
  for (size_t b = 0; b < counts.size(); ++b) sum += 1 - survive[b][counts[b]];
  return sum;
}

}  // namespace

absl::Status ValidateInstance(const AbstractInstance &inst) {
  if (inst.p.empty()) {
    return absl::InvalidArgumentError("instance needs at least one branch");
  }
  for (size_t b = 0; b < inst.p.size(); ++b) {
    if (inst.p[b] < 0 || inst.p[b] > 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "p[", b, "] = ", FormatRational(inst.p[b]), " is outside [0, 1]"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Rational> ExpectedCoverage(const AbstractInstance &inst,
                                          std::span<const size_t> schedule) {
  if (absl::Status s = ValidateInstance(inst); !s.ok()) return s;
  if (schedule.size() != inst.stages) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schedule has ", schedule.size(), " stages, expected ", inst.stages));
  }
  std::vector<size_t> counts(inst.p.size(), 0);
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] >= inst.p.size()) {
      return absl::OutOfRangeError(absl::StrCat(
          "stage ", i, " chooses branch ", schedule[i], " of ", inst.p.size()));
    }
    ++counts[schedule[i]];
  }
  return CoverageFromCounts(SurvivalTable(inst), counts);
}

std::vector<size_t> GreedySchedule(const AbstractInstance &inst) {
  std::vector<size_t> schedule;
  if (inst.p.empty()) return schedule;
  const auto survive = SurvivalTable(inst);
  std::vector<size_t> counts(inst.p.size(), 0);
  for (size_t i = 0; i < inst.stages; ++i) {
    size_t best = 0;
    Rational best_gain = -1;
    for (size_t b = 0; b < inst.p.size(); ++b) {
      Rational gain = survive[b][counts[b]] * inst.p[b];
      if (gain > best_gain) {
        best_gain = gain;
        best = b;
      }
    }
    ++counts[best];
    schedule.push_back(best);
  }
  return schedule;
}

absl::StatusOr<VerifyResult> Verify(const AbstractInstance &inst) {
  if (absl::Status s = ValidateInstance(inst); !s.ok()) return s;
  const size_t m = inst.p.size();
  const double total = std::pow(static_cast<double>(m),
                                static_cast<double>(inst.stages));
  if (total > kMaxSchedules) {
    return absl::ResourceExhaustedError(absl::StrCat(
        m, "^", inst.stages, " schedules exceed the enumeration limit"));
  }
  const auto survive = SurvivalTable(inst);

  VerifyResult res;
  res.greedy = GreedySchedule(inst);
  std::vector<size_t> counts(m, 0);
  for (size_t b : res.greedy) ++counts[b];
  res.greedy_value = CoverageFromCounts(survive, counts);

  // Odometer over all schedules.
  std::vector<size_t> schedule(inst.stages, 0);
  std::fill(counts.begin(), counts.end(), 0);
  counts[0] = inst.stages;
  bool first = true;
  while (true) {
    Rational v = CoverageFromCounts(survive, counts);
    if (first || v > res.optimum_value) {
      res.optimum_value = v;
      res.best = schedule;
      first = false;
    }
    size_t i = 0;
    while (i < schedule.size()) {
      --counts[schedule[i]];
      if (++schedule[i] < m) {
        ++counts[schedule[i]];
        break;
      }
      schedule[i] = 0;
      ++counts[0];
      ++i;
    }
    if (i == schedule.size()) break;
  }
  res.optimal = res.greedy_value == res.optimum_value;
  return res;
}

AbstractInstance RandomGridInstance(size_t branches, size_t stages, Rng &rng) {
  AbstractInstance inst;
  inst.stages = stages;
  for (size_t b = 0; b < branches; ++b) {
    inst.p.emplace_back(static_cast<int>(RandBelow(rng, 11)), 10);
  }
  return inst;
}

std::string FormatRational(const Rational &r) {
  return r.str();
}

}  // namespace frontierfuzz
