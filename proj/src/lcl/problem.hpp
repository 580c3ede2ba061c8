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
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fmpc::lcl {

using Label = std::uint8_t;
using Tuple = std::vector<Label>;
using LabelMask = std::uint32_t;  // bit l set when output label l is allowed

inline constexpr std::size_t kMaxOutputs = 32;

// (input index, output index)
using IoPair = std::pair<Label, Label>;
using Multiset = std::vector<IoPair>;  // kept sorted

// Node-edge-checkable problem. Alphabet order doubles as the tie-breaking
// order for every choice the solver makes.
struct LclProblem {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::set<Multiset> node_constraints;
  std::set<Multiset> edge_constraints;
  std::uint32_t delta_max = 0;

  bool node_allowed(Multiset m) const;
  bool edge_allowed(IoPair a, IoPair b) const;
  // Index of an input label; an empty label maps to inputs[0].
  Label input_index(const std::string& label) const;
  Label output_index(const std::string& label) const;
};

// Throws InvalidSpec on malformed problems.
LclProblem parse_problem(const std::string& json_text);
LclProblem load_problem(const std::string& path);
std::string problem_to_json(const LclProblem& p);

}  // namespace fmpc::lcl
