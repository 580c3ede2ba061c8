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
#include <map>
#include <vector>

#include "forest/forest.hpp"

namespace fmpc::forest {

// Sequential reference answers. Independent of the simulated algorithms.

// Maximum ID in each node's component, via union-find.
std::map<NodeId, NodeId> oracle_components(const Forest& f);
// The same answer via breadth-first search, indexed densely.
std::vector<NodeId> bfs_component_max(const Forest& f);

struct SubtreeSizes {
  std::map<NodeId, std::uint64_t> size;
  std::uint64_t sum = 0;
  std::uint64_t bound = 0;  // n * (depth + 1)
  std::uint64_t depth = 0;
};
// Subtree sizes of the component of `root` rooted at `root`.
SubtreeSizes oracle_subtree_sizes(const Forest& f, NodeId root);

// For every directed edge (v, u): the number of nodes on v's side after
// removing the edge, i.e. |G_{v -/-> u}|. Indexed like Forest::neighbors.
class SideSizes {
 public:
  explicit SideSizes(const Forest& f);
  std::uint64_t away_from(Index v, Port p) const { return side_[offsets_[v] + p - 1]; }
  std::uint64_t component_size(Index v) const { return comp_size_[v]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint64_t> side_;
  std::vector<std::uint64_t> comp_size_;
};

struct LightHeavy {
  std::vector<bool> heavy;                     // per dense index
  std::vector<std::vector<Port>> light_ports;  // ports u with |G_{v-/->u}| <= L
  bool heavy_connected = true;
  bool unique_light_direction = true;
  bool light_side_all_light = true;
};
LightHeavy classify_light_heavy(const Forest& f, std::uint64_t light_threshold);

struct Diameters {
  std::vector<std::uint64_t> per_component;  // ordered by smallest member index
  std::uint64_t max = 0;
};
Diameters diameter(const Forest& f);

}  // namespace fmpc::forest
