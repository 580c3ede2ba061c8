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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fmpc::forest {

using NodeId = std::uint64_t;
using Index = std::uint32_t;
using Port = std::uint32_t;

inline constexpr Index kNoIndex = ~Index{0};

struct HalfEdgeInput {
  NodeId v = 0;
  NodeId u = 0;
  std::string label;
};

// Immutable undirected forest. Nodes are stored in ascending ID order, so a
// dense index comparison is an ID comparison. Ports at a node are numbered
// 1..deg in the order its edges appear in the input edge list.
class Forest {
 public:
  Forest() = default;

  // Throws NotAForest on self-loops, duplicate edges or cycles and
  // UnknownNode when an input refers to a node that does not exist.
  static Forest build(std::vector<NodeId> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges,
                      const std::vector<HalfEdgeInput>& inputs = {});

  Index size() const { return static_cast<Index>(ids_.size()); }
  std::size_t num_edges() const { return edges_.size(); }

  NodeId id(Index v) const { return ids_[v]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  std::optional<Index> find(NodeId id) const;
  Index index_of(NodeId id) const;  // throws UnknownNode

  std::span<const Index> neighbors(Index v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  Index degree(Index v) const { return static_cast<Index>(offsets_[v + 1] - offsets_[v]); }
  Index neighbor(Index v, Port p) const { return adj_[offsets_[v] + p - 1]; }
  Port port_to(Index v, Index u) const;  // 0 when not adjacent

  bool has_inputs() const { return has_inputs_; }
  // Empty string when the half-edge carries no explicit input.
  const std::string& input(Index v, Port p) const { return inputs_[offsets_[v] + p - 1]; }
  std::vector<HalfEdgeInput> input_list() const;

  // Edges as dense index pairs, in input order.
  const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> adj_;
  std::vector<std::string> inputs_;
  std::vector<std::pair<Index, Index>> edges_;
  bool has_inputs_ = false;
};

// Component label per dense index: the smallest index in the component.
std::vector<Index> component_roots(const Forest& f);

}  // namespace fmpc::forest
