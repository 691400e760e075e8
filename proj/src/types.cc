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

#include "frontierfuzz/types.h"

#include <string_view>

namespace frontierfuzz {

bool Holds(Relation relation, Wide f) {
  switch (relation) {
    case Relation::kLt:
      return f < 0;
    case Relation::kLe:
      return f <= 0;
    case Relation::kGt:
      return f > 0;
    case Relation::kGe:
      return f >= 0;
    case Relation::kEq:
      return f == 0;
    case Relation::kNe:
      return f != 0;
  }
  return false;
}

std::string_view RelationName(Relation relation) {
  switch (relation) {
    case Relation::kLt:
      return "lt";
    case Relation::kLe:
      return "le";
    case Relation::kGt:
      return "gt";
    case Relation::kGe:
      return "ge";
    case Relation::kEq:
      return "eq";
    case Relation::kNe:
      return "ne";
  }
  return "?";
}

std::optional<Relation> ParseRelation(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (RelationName(r) == name) return r;
  }
  return std::nullopt;
}

Wide RoundDiv(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide q = num / den;
  Wide r = num % den;
  if (2 * AbsWide(r) >= den) q += num < 0 ? -1 : 1;
  return q;
}

}  // namespace frontierfuzz
