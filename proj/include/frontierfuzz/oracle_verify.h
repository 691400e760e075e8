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

// Exhaustive check that greedy scheduling maximizes expected coverage when
// every branch has a fixed flip probability per stage.
//
// A branch chosen n times over the campaign is flipped with probability
// 1 - (1 - p)^n; expected coverage sums this over branches. All arithmetic
// is exact.

#ifndef FRONTIERFUZZ_ORACLE_VERIFY_H_
#define FRONTIERFUZZ_ORACLE_VERIFY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kMaxSchedules = 1e7;

struct AbstractInstance {
  std::vector<Rational> p;  // per-branch flip probability
  size_t stages = 0;
};

absl::Status ValidateInstance(const AbstractInstance &inst);

absl::StatusOr<Rational> ExpectedCoverage(const AbstractInstance &inst,
                                          std::span<const size_t> schedule);

// Maximal marginal gain (1 - p)^n * p at every stage, ties to the lowest
// branch index.
std::vector<size_t> GreedySchedule(const AbstractInstance &inst);

struct VerifyResult {
  std::vector<size_t> greedy;
  Rational greedy_value;
  std::vector<size_t> best;  // first optimal schedule in enumeration order
  Rational optimum_value;
  bool optimal = false;
};

// Enumerates all m^K schedules. Fails when there are more than 10^7.
absl::StatusOr<VerifyResult> Verify(const AbstractInstance &inst);

// Probabilities drawn uniformly from {0, 1/10, ..., 1}.
AbstractInstance RandomGridInstance(size_t branches, size_t stages, Rng &rng);

std::string FormatRational(const Rational &r);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_ORACLE_VERIFY_H_
