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

#include "mpc/aggtree.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace fmpc::mpc {

AggTree build_aggregation_tree(Simulator& sim, const std::vector<std::vector<std::uint64_t>>& sets) {
  const MachineConfig& cfg = sim.config();
  AggTree tree;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::uint64_t x : sets[i]) tree.elements.emplace_back(i + 1, x);
  }
  if (tree.elements.size() > cfg.global_cap()) {
    throw MemoryExceeded(sim.round(), 0, "aggregation", tree.elements.size(), cfg.global_cap());
  }
  std::sort(tree.elements.begin(), tree.elements.end());
  tree.fanout = cfg.fanout();
  const std::size_t per = cfg.local_words;
  for (std::size_t start = 0; start < std::max<std::size_t>(1, tree.elements.size()); start += per) {
    tree.block_start.push_back(start);
    tree.leaf_assignment.push_back(tree.leaf_assignment.size());
  }
  std::uint64_t width = tree.leaf_assignment.size();
  while (width > 1) {
    width = (width + tree.fanout - 1) / tree.fanout;
    tree.level_width.push_back(width);
  }
  tree.depth = static_cast<std::uint32_t>(tree.level_width.size());
  sim.idle_rounds(2 * tree.depth);
  return tree;
}

std::uint64_t agg_reduce(Simulator& sim, const AggTree& tree, const Combine& combine) {
  if (tree.elements.empty()) fail(ErrorCode::kInvalidInput, "reduce over an empty tree");
  std::vector<std::uint64_t> level;
  for (std::size_t b = 0; b < tree.block_start.size(); ++b) {
    std::size_t lo = tree.block_start[b];
    std::size_t hi = b + 1 < tree.block_start.size() ? tree.block_start[b + 1] : tree.elements.size();
    std::uint64_t acc = tree.elements[lo].second;
    for (std::size_t i = lo + 1; i < hi; ++i) acc = combine(acc, tree.elements[i].second);
    level.push_back(acc);
  }
  while (level.size() > 1) {
    std::vector<std::uint64_t> up;
    for (std::size_t i = 0; i < level.size(); i += tree.fanout) {
      std::uint64_t acc = level[i];
      for (std::size_t j = i + 1; j < std::min(level.size(), i + tree.fanout); ++j) {
        acc = combine(acc, level[j]);
      }
      up.push_back(acc);
    }
    level = std::move(up);
  }
  sim.aggregate(tree.elements.size(), 1);
  return level.front();
}

std::vector<std::uint64_t> agg_broadcast(Simulator& sim, const AggTree& tree, std::uint64_t value) {
  sim.aggregate(tree.elements.size(), 1);
  return std::vector<std::uint64_t>(tree.leaf_assignment.size(), value);
}

}  // namespace fmpc::mpc
