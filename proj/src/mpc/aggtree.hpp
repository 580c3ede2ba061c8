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
#include <functional>
#include <utility>
#include <vector>

#include "mpc/simulator.hpp"

namespace fmpc::mpc {

// Sets A_1..A_k laid out in (set index, element) order over consecutive
// machines, with inner levels of at most `fanout` children above them.
struct AggTree {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> elements;  // (set, value), 1-based set
  std::vector<std::uint64_t> leaf_assignment;                     // machine per block
  std::vector<std::size_t> block_start;                           // first element per block
  std::vector<std::uint64_t> level_width;                         // machines per inner level
  std::uint64_t fanout = 0;
  std::uint32_t depth = 0;
};

// Costs 2 rounds per inner level. Throws MemoryExceeded when the elements do
// not fit into machine_count * local_words.
AggTree build_aggregation_tree(Simulator& sim, const std::vector<std::vector<std::uint64_t>>& sets);

using Combine = std::function<std::uint64_t(std::uint64_t, std::uint64_t)>;

// Folds all element values level by level; depth + 1 rounds.
std::uint64_t agg_reduce(Simulator& sim, const AggTree& tree, const Combine& combine);
// Delivers `value` to every leaf machine; depth + 1 rounds.
std::vector<std::uint64_t> agg_broadcast(Simulator& sim, const AggTree& tree, std::uint64_t value);

}  // namespace fmpc::mpc
