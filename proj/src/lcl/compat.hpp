// Copyright 2026 The forestmpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "forest/forest.hpp"
#include "lcl/problem.hpp"

namespace fmpc::lcl {

using forest::Index;
using forest::kNoIndex;
using forest::Port;

using TupleSet = std::vector<Tuple>;  // sorted, unique
using PairSet = std::vector<std::pair<Label, Label>>;  // (label at port 1, label at port 2), sorted

inline constexpr std::uint32_t kNoEdge = 0xffffffffu;

// An edge of the current graph. Edge port 1 is endpoint a, attached to
// node port pa of a; port 2 is b at node port pb.
struct LEdge {
  Index a = kNoIndex;
  Index b = kNoIndex;
  Port pa = 0;
  Port pb = 0;
  PairSet psi;
  bool alive = true;

  Index other(Index v) const { return v == a ? b : a; }
  Port port_at(Index v) const { return v == a ? pa : pb; }
};

// phi per node and psi per edge. Tuples have one entry per original port.
struct CompatibilityTree {
  std::vector<std::uint32_t> origdeg;
  std::vector<std::shared_ptr<const TupleSet>> phi;
  std::vector<LEdge> edges;
  std::vector<std::vector<std::uint32_t>> port_edge;  // [v][p - 1], current edge at each port

  // Label on v's side of a pair of edge e.
  static Label side(const LEdge& e, Index v, const std::pair<Label, Label>& pr) {
    return v == e.a ? pr.first : pr.second;
  }
};

// Every ordering of an allowed multiset, consistent with the half-edge
// inputs. Original edges put their lower-ID endpoint on port 1. Throws
// InvalidInput for unknown input labels or a degree above delta_max.
CompatibilityTree init_compatibility(const forest::Forest& f, const LclProblem& p);

}  // namespace fmpc::lcl
