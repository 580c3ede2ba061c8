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
#include <string>
#include <utility>
#include <vector>

#include "forest/forest.hpp"

namespace fmpc::maxid {

using forest::Index;
using forest::NodeId;
using Edge = std::pair<Index, Index>;

inline Edge make_edge(Index a, Index b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Mutable forest over the dense indices of an input Forest. Nodes can be
// removed and revived; neighbour lists stay sorted by index (= ID order).
class DynForest {
 public:
  DynForest() = default;
  explicit DynForest(const forest::Forest& f);

  Index capacity() const { return static_cast<Index>(adj_.size()); }
  bool alive(Index v) const { return alive_[v] != 0; }
  std::size_t alive_count() const { return alive_count_; }
  const std::vector<Index>& neighbors(Index v) const { return adj_[v]; }
  Index degree(Index v) const { return static_cast<Index>(adj_[v].size()); }
  bool has_edge(Index a, Index b) const;

  // All mutators throw CorruptLog when the graph does not match.
  void add_edge(Index a, Index b);
  void remove_edge(Index a, Index b);
  void remove_node(Index v);  // v must be alive and isolated
  void revive_node(Index v);  // v must be dead

  std::vector<Index> alive_nodes() const;
  std::vector<Edge> edge_set() const;  // sorted, each edge once
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::vector<std::vector<Index>> adj_;
  std::vector<char> alive_;
  std::size_t alive_count_ = 0;
  std::size_t edge_count_ = 0;
};

enum class Step { kSubtree, kPath, kPairMerge, kContract, kRake };
const char* step_name(Step step);

struct CompressionEvent {
  std::uint32_t phase = 0;
  Step step = Step::kSubtree;
  Index absorber = forest::kNoIndex;
  std::vector<Index> absorbed;
  std::vector<Edge> added;
  std::vector<Edge> removed;
  NodeId id_before = 0;  // absorber's id before absorbing, for reverting
};

// Applying an event removes `removed` edges and the absorbed nodes, then adds
// `added`. Reverting does the exact inverse.
void apply_event(DynForest& g, const CompressionEvent& e);
void revert_event(DynForest& g, const CompressionEvent& e);

using CompressionLog = std::vector<CompressionEvent>;

}  // namespace fmpc::maxid
