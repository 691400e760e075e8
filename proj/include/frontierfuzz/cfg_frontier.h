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

// Coverage bookkeeping and frontier-branch identification.
//
// A node is visited once any edge incident to it has executed. A frontier
// branch is a visited guard with exactly one of its two edges exercised; it
// is the unit the scheduler reasons about.

#ifndef FRONTIERFUZZ_CFG_FRONTIER_H_
#define FRONTIERFUZZ_CFG_FRONTIER_H_

#include <algorithm>
#include <cstddef>
#include <memory>
#include <set>
#include <vector>

#include "absl/status/statusor.h"
#include "frontierfuzz/guard_program.h"
#include "frontierfuzz/harness.h"
#include "frontierfuzz/types.h"

namespace frontierfuzz {

// Sorted set of frontier node ids.
class FrontierSet {
 public:
  FrontierSet() = default;
  explicit FrontierSet(std::vector<NodeId> sorted) : ids_(std::move(sorted)) {}

  bool contains(NodeId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<NodeId> &ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const FrontierSet &, const FrontierSet &) = default;

 private:
  std::vector<NodeId> ids_;
};

class CoverageMap {
 public:
  explicit CoverageMap(std::shared_ptr<const GuardProgram> program);

  // Folds `trace` in. Returns the number of previously unseen edges; when
  // `fresh` is given, those edges are appended to it.
  absl::StatusOr<size_t> Absorb(const ExecutionTrace &trace,
                                std::vector<EdgeId> *fresh = nullptr);

  bool edge_hit(EdgeId e) const { return edge_hits_[e]; }
  bool node_visited(NodeId n) const { return node_visited_[n]; }
  size_t edges_covered() const { return edges_covered_; }
  size_t visited_count() const { return visited_count_; }
  // Both edges of guard `n` exercised.
  bool fully_explored(NodeId n) const {
    return edge_hits_[TakenEdge(n)] && edge_hits_[NotTakenEdge(n)];
  }
  const GuardProgram &program() const { return *program_; }

 private:
  void Visit(NodeId n);

  std::shared_ptr<const GuardProgram> program_;
  std::vector<bool> edge_hits_;
  std::vector<bool> node_visited_;
  size_t edges_covered_ = 0;
  size_t visited_count_ = 0;
};

// The frontier as a pure function of coverage.
FrontierSet RecomputeFrontier(const CoverageMap &cov, const GuardProgram &program);

// Maintains the frontier incrementally from the stream of fresh edges.
class FrontierTracker {
 public:
  void OnFreshEdges(const CoverageMap &cov, const std::vector<EdgeId> &fresh);
  FrontierSet Snapshot() const {
    return FrontierSet(std::vector<NodeId>(ids_.begin(), ids_.end()));
  }
  size_t size() const { return ids_.size(); }

 private:
  std::set<NodeId> ids_;
};

}  // namespace frontierfuzz

#endif  // FRONTIERFUZZ_CFG_FRONTIER_H_
