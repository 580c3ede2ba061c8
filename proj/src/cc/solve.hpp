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
#include "maxid/params.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::cc {

// Diameter guesses 2^(2^i) for i = 1, 2, ... up to and including the first
// guess that is at least n.
std::vector<std::uint64_t> guess_schedule(std::uint64_t n);

struct CcParams {
  maxid::MaxIdParams maxid;  // dhat is replaced by each guess
  std::uint64_t start_dhat = 0;  // nonzero: first guess, then the larger scheduled ones
  bool force_fallback = false;
  std::uint64_t n_hint = 0;  // global n for derived thresholds; 0 uses the input size
};

struct GuessAttempt {
  std::uint64_t dhat = 0;
  std::uint32_t preprocess_iterations = 0;
  std::uint32_t phases = 0;
  bool success = false;
  std::uint64_t rounds = 0;  // simulated rounds spent on this guess
};

struct CcResult {
  std::vector<forest::NodeId> label;  // component max ID per dense index
  std::vector<GuessAttempt> attempts;
  bool fallback = false;
};

// Every node learns the maximum ID of its component.
CcResult solve_cc(const forest::Forest& f, const CcParams& params, mpc::Simulator& sim);

struct RootResult {
  std::vector<forest::Index> parent;  // kNoIndex for roots
  std::vector<forest::NodeId> label;
  CcResult cc;
};

// Orients every component towards a single root. Components are processed
// side by side, each with its own simulator on the shared configuration,
// so a component's orientation does not depend on the rest of the forest.
RootResult root_forest(const forest::Forest& f, const CcParams& params, mpc::Simulator& sim);

}  // namespace fmpc::cc
