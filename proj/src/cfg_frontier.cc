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

#include "frontierfuzz/cfg_frontier.h"

#include <memory>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace frontierfuzz {

CoverageMap::CoverageMap(std::shared_ptr<const GuardProgram> program)
    : program_(std::move(program)),
      edge_hits_(program_->edge_space(), false),
      node_visited_(program_->nodes.size(), false) {}

void CoverageMap::Visit(NodeId n) {
  if (n == kTerminal || node_visited_[n]) return;
  node_visited_[n] = true;
  ++visited_count_;
}

absl::StatusOr<size_t> CoverageMap::Absorb(const ExecutionTrace &trace,
                                           std::vector<EdgeId> *fresh) {
  for (EdgeId e : trace.edges) {
    if (e >= edge_hits_.size() || !program_->node(EdgeSource(e)).is_guard()) {
      return absl::InvalidArgumentError(absl::StrCat("unknown edge id ", e));
    }
  }
  size_t added = 0;
  for (EdgeId e : trace.edges) {
    if (edge_hits_[e]) continue;
    edge_hits_[e] = true;
    ++edges_covered_;
    ++added;
    if (fresh) fresh->push_back(e);
    Visit(EdgeSource(e));
    Visit(program_->EdgeTarget(e));
  }
  return added;
}

FrontierSet RecomputeFrontier(const CoverageMap &cov, const GuardProgram &program) {
  std::vector<NodeId> ids;
  for (const GuardNode &node : program.nodes) {
    if (!node.is_guard() || !cov.node_visited(node.id)) continue;
    if (cov.edge_hit(TakenEdge(node.id)) != cov.edge_hit(NotTakenEdge(node.id))) {
      ids.push_back(node.id);
    }
  }
  return FrontierSet(std::move(ids));
}

void FrontierTracker::OnFreshEdges(const CoverageMap &cov,
                                   const std::vector<EdgeId> &fresh) {
  for (EdgeId e : fresh) {
    const NodeId n = EdgeSource(e);
    if (cov.edge_hit(SiblingEdge(e))) {
      ids_.erase(n);
    } else {
      ids_.insert(n);
    }
  }
}

}  // namespace frontierfuzz
