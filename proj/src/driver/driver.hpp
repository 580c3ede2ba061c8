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
#include <optional>
#include <string>
#include <vector>

#include "forest/forest.hpp"
#include "lcl/problem.hpp"
#include "lcl/solver.hpp"

namespace fmpc::driver {

// Every tunable in one place. Zero thresholds are derived from n.
struct Options {
  double delta = 0.5;
  double c_loc = 4.0;
  std::uint64_t machine_count = 0;
  std::uint64_t bandwidth_words = 0;
  bool strict_memory = false;
  std::uint64_t light_threshold = 0;
  std::uint64_t full_threshold = 0;
  std::uint64_t subtree_threshold = 0;
  std::uint64_t dhat = 0;  // maxid: 0 uses the exact diameter; otherwise the first guess
  std::uint64_t iters_coeff = 4;
  bool force_fallback = false;
  bool instrument = false;
  std::uint64_t seed = 0;
};

// Overrides the fields present in a JSON object. Throws Config on unknown
// keys or wrong types.
void apply_config_json(Options& o, const std::string& json_text);

enum class Algo { kMaxId, kCc, kRoot, kLcl };
Algo parse_algo(const std::string& name);
const char* algo_name(Algo a);

struct Outcome {
  Algo algo = Algo::kCc;
  std::vector<forest::NodeId> label;  // maxid, cc
  std::vector<forest::Index> parent;  // root, lcl
  bool solvable = true;
  std::vector<lcl::Tuple> half_edge;  // lcl
  std::optional<bool> verified;
  std::string verify_detail;
  std::uint64_t rounds = 0;
  std::uint64_t peak_local = 0;
  std::uint64_t peak_global = 0;
  std::uint64_t messages = 0;
  std::uint64_t violations = 0;
  std::uint64_t check_failures = 0;
  std::string stats_json;
};

// Runs one algorithm on a fresh simulator. problem is required for lcl.
Outcome run(const forest::Forest& f, Algo algo, const Options& o, const lcl::LclProblem* problem, bool verify);

// maxid/cc: "node label"; root: "node parent" (a root names itself);
// lcl: "v u label" per half-edge, or UNSOLVABLE.
std::string format_output(const forest::Forest& f, const Outcome& out, const lcl::LclProblem* problem);

struct Verdict {
  bool ok = false;
  std::string detail;
};

// Checks an outcome against the sequential oracles or the LCL verifier.
Verdict check(const forest::Forest& f, const Outcome& out, const lcl::LclProblem* problem);

// Parses output text in the format_output layout and checks it. Throws
// InvalidInput on malformed text.
Verdict check_text(const forest::Forest& f, Algo algo, const lcl::LclProblem* problem, const std::string& text);

}  // namespace fmpc::driver
