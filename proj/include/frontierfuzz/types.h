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

// Vocabulary types shared by every module.

#ifndef FRONTIERFUZZ_TYPES_H_
#define FRONTIERFUZZ_TYPES_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "absl/numeric/int128.h"

namespace frontierfuzz {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

// Signed semantic integer for comparison operands and distances. 128 bits
// leave headroom for differences of 64-bit operands.
using Wide = absl::int128;

using NodeId = uint32_t;
using EdgeId = uint32_t;
using Rng = std::mt19937_64;

inline constexpr NodeId kTerminal = std::numeric_limits<NodeId>::max();

inline constexpr EdgeId TakenEdge(NodeId node) { return 2 * node; }
inline constexpr EdgeId NotTakenEdge(NodeId node) { return 2 * node + 1; }
inline constexpr NodeId EdgeSource(EdgeId edge) { return edge / 2; }
inline constexpr EdgeId SiblingEdge(EdgeId edge) { return edge ^ 1u; }

// Comparison relation of a guard, evaluated as `f R 0`.
enum class Relation : uint8_t { kLt, kLe, kGt, kGe, kEq, kNe };

inline constexpr Relation kAllRelations[] = {Relation::kLt, Relation::kLe,
                                             Relation::kGt, Relation::kGe,
                                             Relation::kEq, Relation::kNe};

// Returns whether `f R 0` holds.
bool Holds(Relation relation, Wide f);

std::string_view RelationName(Relation relation);
std::optional<Relation> ParseRelation(std::string_view name);

// Uniform value in [0, bound). `bound` must be nonzero.
inline uint64_t RandBelow(Rng &rng, uint64_t bound) { return rng() % bound; }

// Round-half-away-from-zero quotient of num / den. `den` must be nonzero.
Wide RoundDiv(Wide num, Wide den);

inline Wide AbsWide(Wide v) { return v < 0 ? -v : v; }

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_TYPES_H_
