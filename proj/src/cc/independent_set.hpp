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
#include <vector>

#include "forest/forest.hpp"
#include "maxid/dynforest.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::cc {

using forest::Index;
using forest::NodeId;

// Coin of node u is the parity <seed, (1, key_u)> over GF(2), a 3-wise
// independent family. u joins S when its coin is 1 and the coins of its
// neighbours in U are 0. The 65 seed bits are fixed 8 at a time by
// conditional expectations, so |S| >= ceil(|U| / 8).
inline constexpr std::uint32_t kSeedBits = 65;
inline constexpr std::uint32_t kChunkBits = 8;

struct IsResult {
  std::vector<Index> members;  // sorted
  unsigned __int128 seed = 0;
  std::uint32_t chunks = 0;
};

// Every node of U must have degree 2 in g. keys are distinct per node.
// With a simulator, charges the neighbour exchange, one reduce and one
// broadcast per chunk, and the announcement round.
IsResult deterministic_is(const maxid::DynForest& g, const std::vector<NodeId>& keys,
                          const std::vector<Index>& U, mpc::Simulator* sim);

}  // namespace fmpc::cc
