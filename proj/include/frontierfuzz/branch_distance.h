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

// Branch distance: how far an input is from flipping a frontier branch,
// derived from the (outcome, relation, f) feedback of a guard.

#ifndef FRONTIERFUZZ_BRANCH_DISTANCE_H_
#define FRONTIERFUZZ_BRANCH_DISTANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

struct BranchDistance {
  enum class Form : uint8_t { kScalar, kVector };

  Form form = Form::kScalar;
  Wide scalar = 0;
  std::vector<Wide> vec;

  static BranchDistance Scalar(Wide v) { return {Form::kScalar, v, {}}; }
  static BranchDistance Vector(std::vector<Wide> v) {
    return {Form::kVector, 0, std::move(v)};
  }

  bool is_vector() const { return form == Form::kVector; }
  // Scalar value, or the L1 norm of a vector distance.
  Wide Magnitude() const;

  friend bool operator==(const BranchDistance &, const BranchDistance &) = default;
};

// The distance rule for (outcome, relation) applied to `f`, without checking
// that the tuple is consistent. Used per byte for string comparisons.
Wide ApplyDistanceRule(bool outcome, Relation relation, Wide f);

// Scalar distance. Fails when `outcome != Holds(relation, f)`.
absl::StatusOr<Wide> Distance(bool outcome, Relation relation, Wide f);

// Per-byte distance of a string comparison. Fails on an empty vector.
absl::StatusOr<BranchDistance> StringDistance(bool outcome, Relation relation,
                                              std::span<const int16_t> byte_diffs);

// Distance of the form matching the observation kind.
absl::StatusOr<BranchDistance> DistanceOf(const BranchObservation &obs);

// Strict order used for minima: scalars numerically; vectors by L1 norm with
// lexicographic tie-break. Forms must match.
bool DistanceLess(const BranchDistance &a, const BranchDistance &b);

// Minimum distance seen at one site and the input that achieved it.
struct DistanceRecord {
  NodeId site = 0;
  std::optional<BranchDistance> best;
  Bytes best_input;
};

// Replaces the record's minimum iff `d` is strictly lower, or the record is
// empty. Returns whether it did. Fails on a form mismatch.
absl::StatusOr<bool> UpdateRecord(DistanceRecord &rec, ByteSpan input,
                                  const BranchDistance &d);

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_BRANCH_DISTANCE_H_
