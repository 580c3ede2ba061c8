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

#include "maxid/dynforest.hpp"
#include "maxid/params.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::maxid {

enum class NodeMode : std::uint8_t { kActive, kHappy, kFull, kSad };

// Mutable per-run state shared by the compression steps.
struct MaxIdState {
  DynForest graph;
  std::vector<NodeId> ids;            // id_v per dense index
  std::vector<std::uint64_t> retained;  // words of absorbed sets kept for decompression
  CompressionLog log;
};

struct ClstStats {
  std::uint32_t iterations_run = 0;
  std::uint64_t happy = 0;
  std::uint64_t sad = 0;
  std::uint64_t full = 0;
  std::uint64_t light = 0;
  std::uint64_t absorbed = 0;
  std::uint64_t peak_global = 0;
  // Per alive node before the step: CLST-absorbed node count after it.
  std::vector<std::uint64_t> absorbed_into;  // indexed by dense index
};

// One run of the light-subtree compression on every component of the
// current graph. Throws PhaseFailure when a light node ends unhappy.
ClstStats compress_light_subtrees(MaxIdState& st, std::uint32_t phase, const ResolvedParams& params,
                                  mpc::Simulator& sim);

// Replaces every maximal run of degree-2 nodes by an edge between its
// endpoints, absorbing the run into the higher-ID endpoint. Throws
// PhaseFailure when a run is not learned within the iteration budget.
std::uint32_t compress_paths(MaxIdState& st, std::uint32_t phase, const ResolvedParams& params,
                             mpc::Simulator& sim);

// Absorbs X into the absorber: logs the event, updates ids and retained words.
void record_event(MaxIdState& st, CompressionEvent e);

}  // namespace fmpc::maxid
