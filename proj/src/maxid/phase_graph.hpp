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
#include <span>
#include <vector>

#include "maxid/dynforest.hpp"

namespace fmpc::maxid {

using LocalIndex = std::uint32_t;
using Port = std::uint32_t;
inline constexpr LocalIndex kNone = ~LocalIndex{0};

// Frozen snapshot of the alive part of a DynForest with local indices in ID
// order. Each component is rooted at its smallest node; the rooting answers
// direction queries r_v(w) and side sizes |G_{v -/-> u}| in O(log deg).
class PhaseGraph {
 public:
  explicit PhaseGraph(const DynForest& g);

  LocalIndex size() const { return static_cast<LocalIndex>(global_.size()); }
  Index global(LocalIndex v) const { return global_[v]; }
  LocalIndex local(Index g) const { return local_[g]; }

  std::span<const LocalIndex> neighbors(LocalIndex v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  Port degree(LocalIndex v) const { return static_cast<Port>(off_[v + 1] - off_[v]); }
  LocalIndex neighbor(LocalIndex v, Port p) const { return adj_[off_[v] + p - 1]; }
  Port port_of(LocalIndex v, LocalIndex u) const;  // 0 when not adjacent

  // Port of v leading towards w (w != v, same component).
  Port direction(LocalIndex v, LocalIndex w) const;
  // Number of nodes on v's side of the edge through port p.
  std::uint64_t side(LocalIndex v, Port p) const;

  std::uint32_t component(LocalIndex v) const { return comp_[v]; }
  std::uint32_t component_count() const { return static_cast<std::uint32_t>(comp_size_.size()); }
  std::uint64_t component_size(std::uint32_t c) const { return comp_size_[c]; }
  LocalIndex component_root(std::uint32_t c) const { return comp_root_[c]; }

  // Nodes on v's side of port p, including v.
  std::vector<LocalIndex> side_nodes(LocalIndex v, Port p) const;

 private:
  std::vector<Index> global_;
  std::vector<LocalIndex> local_;
  std::vector<std::size_t> off_;
  std::vector<LocalIndex> adj_;
  std::vector<LocalIndex> parent_;
  std::vector<Port> parent_port_;
  std::vector<std::uint32_t> tin_, tout_;
  std::vector<std::uint64_t> sub_;
  std::vector<std::uint32_t> comp_;
  std::vector<std::uint64_t> comp_size_;
  std::vector<LocalIndex> comp_root_;
  // Children of each node in DFS order as (tin, port), sliced like adj_.
  std::vector<std::size_t> child_off_;
  std::vector<std::pair<std::uint32_t, Port>> children_;
};

}  // namespace fmpc::maxid
