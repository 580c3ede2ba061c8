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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "forest/forest.hpp"

namespace fmpc::forest {

// A forest plus the optional (s, t) side table used by the s-t path family.
struct Instance {
  Forest forest;
  std::optional<std::pair<NodeId, NodeId>> st;
};

// Text format:
//   n m
//   u v            (m lines)
//   # nodes        (optional; IDs of nodes that appear in no edge)
//   # inputs       (optional; "v u label" per half-edge)
//   # st           (optional; "s t")
// Other lines starting with '#' are comments.
Instance read_text(std::istream& in);
Instance read_json(const std::string& text);
// Dispatches on the first non-blank character: '{' selects JSON.
Instance read_any(std::istream& in);
Instance read_file(const std::string& path);

void write_text(std::ostream& out, const Instance& inst);
std::string to_json(const Instance& inst);

}  // namespace fmpc::forest
