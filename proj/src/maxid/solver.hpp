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
#include <vector>

#include "forest/forest.hpp"
#include "maxid/clst.hpp"
#include "maxid/params.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::maxid {

struct PhaseReport {
  std::uint32_t phase = 0;
  std::uint64_t nodes_before = 0;
  std::uint64_t nodes_after_subtrees = 0;
  std::uint64_t nodes_after = 0;
  std::uint32_t subtree_iterations = 0;
  std::uint32_t path_iterations = 0;
};

struct CompressRun {
  std::uint32_t phases = 0;
  std::vector<PhaseReport> reports;
};

MaxIdState make_state(const forest::Forest& f);

// Runs compression phases on every component until each is a single node.
// Throws PhaseFailure when the phase budget is exhausted.
CompressRun maxid_compress(MaxIdState& st, const ResolvedParams& params, mpc::Simulator& sim);

// Undoes the log suffix starting at log_begin in reverse order, spreading
// each absorber's id to the nodes it absorbed. One round per (phase, step).
// on_revive runs right after each event is undone.
void maxid_decompress(MaxIdState& st, std::size_t log_begin, mpc::Simulator& sim,
                      const std::function<void(const CompressionEvent&)>& on_revive = {});

// Undoes the log suffix and restores the ids held before each event.
void maxid_revert(MaxIdState& st, std::size_t log_begin);

struct MaxIdResult {
  std::vector<forest::NodeId> output;  // per dense index
  ResolvedParams params;
  CompressRun run;
};

// Every node of the tree outputs the maximum identifier. Throws NotATree
// for a forest with more than one component.
MaxIdResult maxid_solver(const forest::Forest& f, const MaxIdParams& params, mpc::Simulator& sim);

}  // namespace fmpc::maxid
