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
#include <map>
#include <string>
#include <vector>

#include "forest/io.hpp"

namespace fmpc::forest {

// Kinds and parameters:
//   path           length
//   star           leaves
//   broom          length, leaves
//   caterpillar    length, legs       or   n, diameter
//   balanced_tree  degree, depth
//   random_forest  n [, components, diameter]
//   st_path_family diameter [, components]
// Common: shuffle=0|1 permutes IDs, sparse=1 draws random 64-bit IDs.
// Structured kinds number nodes 1..n in construction order by default; the
// random kinds shuffle by default.
struct InstanceSpec {
  std::string kind;
  std::map<std::string, std::uint64_t> params;
  std::uint64_t seed = 0;

  std::uint64_t get(const std::string& key, std::uint64_t fallback) const;
  std::uint64_t require(const std::string& key) const;
};

// Parses "key=value" tokens. Throws InvalidSpec on malformed tokens.
InstanceSpec parse_spec(const std::string& kind, const std::vector<std::string>& tokens,
                        std::uint64_t seed);

Instance generate(const InstanceSpec& spec);

const std::vector<std::string>& generator_kinds();

}  // namespace fmpc::forest
