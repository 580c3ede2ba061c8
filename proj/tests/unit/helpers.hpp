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

#include <functional>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "forest/forest.hpp"
#include "mpc/config.hpp"
#include "mpc/simulator.hpp"

namespace testing {

inline fmpc::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const fmpc::Error& e) {
    return e.code();
  }
  return fmpc::ErrorCode::kOk;
}

// Path 1-2-...-n.
inline fmpc::forest::Forest path_forest(std::uint64_t n) {
  std::vector<std::pair<fmpc::forest::NodeId, fmpc::forest::NodeId>> edges;
  for (fmpc::forest::NodeId i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return fmpc::forest::Forest::build({1}, edges);
}

// Simulator sized for f with 1 + deg(v) input words per node.
inline fmpc::mpc::Simulator sim_for(const fmpc::forest::Forest& f, bool strict = false) {
  std::vector<std::uint64_t> words(f.size());
  for (fmpc::forest::Index v = 0; v < f.size(); ++v) words[v] = 1 + f.degree(v);
  auto cfg = fmpc::mpc::MachineConfig::derive(f.size(), f.num_edges(), 0.5, 4.0, 0, 0, strict);
  return fmpc::mpc::Simulator(cfg, words);
}

}  // namespace testing
