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
#include <vector>

#include "cc/solve.hpp"
#include "forest/forest.hpp"
#include "lcl/problem.hpp"
#include "lcl/state.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::lcl {

struct LclParams {
  std::uint64_t subtree_threshold = 0;  // H; 0 derives ceil(n^{delta/2})
  cc::CcParams rooting;
};

struct LclPhaseReport {
  std::uint32_t phase = 0;
  std::uint64_t heavy = 0;
  std::uint64_t local_roots = 0;
  std::uint64_t absorbed = 0;
  std::uint64_t spliced = 0;
  std::uint32_t layers = 0;
  std::uint64_t nodes_after = 0;
};

struct LclResult {
  bool solvable = true;
  std::vector<Tuple> labels;  // per dense index, one output per original port; empty when unsolvable
  std::vector<Index> parent;
  std::uint64_t subtree_threshold = 0;
  std::uint32_t phases = 0;
  std::vector<LclPhaseReport> reports;
};

std::uint64_t default_subtree_threshold(std::uint64_t n, double delta);
std::uint32_t lcl_phase_budget(std::uint64_t n, std::uint64_t H);

// Solves a node-edge-checkable problem on a forest or reports that no valid
// labeling exists.
LclResult lcl_solver(const forest::Forest& f, const LclProblem& p, const LclParams& params, mpc::Simulator& sim);

enum class VerifyStatus { kOk, kNodeViolation, kEdgeViolation, kIncomplete };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::kOk;
  forest::NodeId node = 0;
  forest::NodeId other = 0;  // the second endpoint of a violating edge
  std::string detail;
  bool ok() const { return status == VerifyStatus::kOk; }
};

// Checks every node multiset and every edge pair. labels[v] holds one output
// index per port of v.
VerifyResult verify_lcl(const forest::Forest& f, const LclProblem& p, const std::vector<Tuple>& labels);

const char* verify_status_name(VerifyStatus s);

}  // namespace fmpc::lcl
