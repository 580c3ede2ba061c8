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

#include "maxid/clst.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::cc {

struct ProcessStats {
  std::uint32_t iterations = 0;
  std::uint64_t contracted = 0;
  std::uint64_t raked = 0;
};

// Up to `iterations` rounds of Contract on a deterministic independent set
// of degree-2 nodes followed by Rake of every leaf. Stops early once every
// component is a single node. Events go to st.log with steps kContract and
// kRake; keys are the original node IDs.
ProcessStats preprocess(maxid::MaxIdState& st, const std::vector<forest::NodeId>& keys,
                        std::uint32_t iterations, mpc::Simulator& sim);

// Runs rake and contract until every component is a single node.
ProcessStats contract_to_singletons(maxid::MaxIdState& st, const std::vector<forest::NodeId>& keys,
                                    mpc::Simulator& sim);

// Undoes the log suffix from log_begin, handing each absorber's id to the
// nodes it absorbed.
void postprocess(maxid::MaxIdState& st, std::size_t log_begin, mpc::Simulator& sim);

}  // namespace fmpc::cc
