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

#include "frontierfuzz/branch_distance.h"

#include <algorithm>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frontierfuzz {

Wide BranchDistance::Magnitude() const {
  if (form == Form::kScalar) return scalar;
  Wide sum = 0;
  for (Wide v : vec) sum += AbsWide(v);
  return sum;
}

Wide ApplyDistanceRule(bool outcome, Relation relation, Wide f) {
  // Rows are grouped by the function they share.
  switch (relation) {
    case Relation::kLt:
      return outcome ? -f : f - 1;
    case Relation::kLe:
      return outcome ? 1 - f : f;
    case Relation::kGt:
      return outcome ? f : 1 - f;
    case Relation::kGe:
      return outcome ? f - 1 : -f;
    case Relation::kEq:
      return outcome ? 1 - AbsWide(f) : AbsWide(f);
    case Relation::kNe:
      return outcome ? AbsWide(f) : 1 - AbsWide(f);
  }
  return 0;
}

absl::StatusOr<Wide> Distance(bool outcome, Relation relation, Wide f) {
  if (Holds(relation, f) != outcome) {
    return absl::InvalidArgumentError(
        absl::StrCat("inconsistent tuple: outcome ", outcome ? "true" : "false", " for f ",
                     std::string(RelationName(relation)), " 0"));
  }
  return ApplyDistanceRule(outcome, relation, f);
}

absl::StatusOr<BranchDistance> StringDistance(bool outcome, Relation relation,
                                              std::span<const int16_t> byte_diffs) {
  if (byte_diffs.empty()) {
    return absl::InvalidArgumentError("empty byte difference vector");
  }
  std::vector<Wide> per_byte;
  per_byte.reserve(byte_diffs.size());
  for (int16_t d : byte_diffs) {
    per_byte.push_back(ApplyDistanceRule(outcome, relation, d));
  }
  return BranchDistance::Vector(std::move(per_byte));
}

absl::StatusOr<BranchDistance> DistanceOf(const BranchObservation &obs) {
  if (obs.kind == GuardKind::kStr) {
    return StringDistance(obs.outcome, obs.relation, obs.byte_diffs);
  }
  auto d = Distance(obs.outcome, obs.relation, obs.f_value);
  if (!d.ok()) return d.status();
  return BranchDistance::Scalar(*d);
}

bool DistanceLess(const BranchDistance &a, const BranchDistance &b) {
  if (a.form == BranchDistance::Form::kScalar) return a.scalar < b.scalar;
  const Wide na = a.Magnitude(), nb = b.Magnitude();
  if (na != nb) return na < nb;
  return std::lexicographical_compare(a.vec.begin(), a.vec.end(), b.vec.begin(),
                                      b.vec.end());
}

absl::StatusOr<bool> UpdateRecord(DistanceRecord &rec, ByteSpan input,
                                  const BranchDistance &d) {
  if (rec.best && rec.best->form != d.form) {
    return absl::InvalidArgumentError(
        absl::StrCat("distance form mismatch at site ", rec.site));
  }
  if (rec.best && !DistanceLess(d, *rec.best)) return false;
  rec.best = d;
  rec.best_input.assign(input.begin(), input.end());
  return true;
}

}  // namespace frontierfuzz
