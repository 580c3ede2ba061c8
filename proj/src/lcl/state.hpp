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
#include <utility>
#include <vector>

#include "forest/forest.hpp"
#include "lcl/compat.hpp"
#include "lcl/problem.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::lcl {

enum class Role : std::uint8_t { kLight, kHeavy, kLocalRoot };

// A light subtree T(child) absorbed by a local root. nodes lists T(child)
// parents first, each with the edge to its parent.
struct SubtreeRecord {
  std::uint32_t phase = 0;
  Index root = kNoIndex;
  std::vector<std::pair<Index, std::uint32_t>> nodes;
};

// A degree-2 node v replaced its edges e (on its lower port) and e2 by enew.
struct SpliceRecord {
  std::uint32_t phase = 0;
  std::uint32_t layer = 0;
  Index v = kNoIndex;
  std::uint32_t e = kNoEdge;
  std::uint32_t e2 = kNoEdge;
  std::uint32_t enew = kNoEdge;
  Index parent_of_v = kNoIndex;
  Index child_of_v = kNoIndex;
};

// Rooted current graph with its compatibility tree and compression logs.
struct LclState {
  const forest::Forest* forest = nullptr;
  std::uint32_t outputs = 0;
  CompatibilityTree ct;
  std::vector<char> alive;
  std::vector<Index> parent;  // kNoIndex for the root of each component
  std::uint64_t live_edges = 0;
  bool unsolvable = false;

  std::vector<LabelMask> feas;  // F(w): labels on w's parent half-edge that complete T(w)
  std::vector<Tuple> chosen;    // c(v) once fixed
  std::vector<char> has_choice;

  std::vector<SubtreeRecord> subtree_log;
  std::vector<SpliceRecord> splice_log;

  Index size() const { return static_cast<Index>(alive.size()); }
  forest::NodeId id(Index v) const { return forest->id(v); }
  // Live edges at v in port order.
  std::vector<std::uint32_t> edges_at(Index v) const;
  Port degree(Index v) const;
  // (child, edge) pairs in port order.
  std::vector<std::pair<Index, std::uint32_t>> children(Index v) const;
  // Marks the problem unsolvable when a live node or edge ran out of options.
  bool check_empty();
};

// parent must orient every component towards a single root.
LclState make_state(const forest::Forest& f, const LclProblem& p, const std::vector<Index>& parent);

struct CssResult {
  std::vector<Role> role;
  std::vector<std::uint64_t> size;  // |T(v)| for light nodes, 0 for heavy ones
  std::uint32_t iterations = 0;
};

// Frontier doubling: every node learns |T(v)| or that it exceeds H.
CssResult count_subtree_sizes(const LclState& st, std::uint64_t H, mpc::Simulator* sim);

struct GatherResult {
  std::vector<std::vector<Index>> held;  // sorted node sets, nonempty only at local roots
  std::uint32_t iterations = 0;
};

// Local roots collect the nodes of the subtrees of all light children.
GatherResult gather_subtrees(const LclState& st, const CssResult& css, mpc::Simulator* sim);

// Labels on the local root's half-edge towards child that complete T(child).
LabelMask completion_labels(const LclState& st, Index root, Index child, std::uint32_t edge);

// Compresses every gathered light subtree into its local root, filtering the
// root's tuples. Returns the number of absorbed nodes.
std::uint64_t compress_subtrees(LclState& st, const CssResult& css, const GatherResult& gs,
                                std::uint32_t phase, mpc::Simulator* sim);

// Pointer jumping along a path given as [x, internal..., y]: returns for
// every internal node its distances to x and to y.
std::vector<std::pair<std::uint64_t, std::uint64_t>> path_distances(std::size_t internal,
                                                                    mpc::Simulator* sim,
                                                                    std::uint32_t* iterations);

// Forest-level form for a single path: per internal node ID, its distances
// to the non-head endpoint and to the head (the higher-ID endpoint). Throws
// InvalidInput when the forest is not a path with at least one edge.
std::map<forest::NodeId, std::pair<std::uint64_t, std::uint64_t>> count_distances(
    const forest::Forest& path, mpc::Simulator* sim);

// Splices all maximal runs of degree-2 non-root nodes into single edges in
// layers. Returns the number of layers.
std::uint32_t advanced_compress_paths(LclState& st, std::uint32_t phase, mpc::Simulator* sim);

void decompress_paths(LclState& st, std::uint32_t phase, mpc::Simulator* sim);
void decompress_subtrees(LclState& st, std::uint32_t phase, mpc::Simulator* sim);

}  // namespace fmpc::lcl
