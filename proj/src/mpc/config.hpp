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

namespace fmpc::mpc {

struct MachineConfig {
  std::uint64_t n = 1;
  std::uint64_t m = 0;
  double delta = 0.5;
  double c_loc = 4.0;
  std::uint64_t local_words = 0;      // S
  std::uint64_t machine_count = 0;    // M
  std::uint64_t bandwidth_words = 0;  // per machine, per round, each way
  bool strict_mode = false;

  // Fills local_words = ceil(c_loc * n^delta), bandwidth_words = local_words
  // and, when zero, machine_count = ceil(2 (n + m) / local_words). Throws
  // Config when an invariant fails.
  static MachineConfig derive(std::uint64_t n, std::uint64_t m, double delta = 0.5,
                              double c_loc = 4.0, std::uint64_t machine_count = 0,
                              std::uint64_t bandwidth_words = 0, bool strict_mode = false);

  void validate() const;

  // ceil(n^{delta/2}), at least 2.
  std::uint64_t fanout() const;
  // ceil(2 / delta) + 1.
  std::uint32_t depth_bound() const;
  std::uint64_t global_cap() const { return machine_count * local_words; }

  std::string to_json() const;
};

}  // namespace fmpc::mpc
