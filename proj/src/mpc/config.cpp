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

#include "mpc/config.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "json.hpp"

namespace fmpc::mpc {

MachineConfig MachineConfig::derive(std::uint64_t n, std::uint64_t m, double delta, double c_loc,
                                    std::uint64_t machine_count, std::uint64_t bandwidth_words,
                                    bool strict_mode) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kConfig, "delta must lie in (0, 1)");
  if (!(c_loc > 0.0)) fail(ErrorCode::kConfig, "c_loc must be positive");
  MachineConfig c;
  c.n = std::max<std::uint64_t>(n, 1);
  c.m = m;
  c.delta = delta;
  c.c_loc = c_loc;
  c.local_words = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(c_loc * std::pow(static_cast<double>(c.n), delta) - 1e-9)));
  c.bandwidth_words = bandwidth_words != 0 ? bandwidth_words : c.local_words;
  if (machine_count == 0) {
    machine_count = std::max<std::uint64_t>(1, (2 * (c.n + m) + c.local_words - 1) / c.local_words);
  }
  c.machine_count = machine_count;
  c.strict_mode = strict_mode;
  c.validate();
  return c;
}

void MachineConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::kConfig, "delta must lie in (0, 1)");
  if (local_words < 1) fail(ErrorCode::kConfig, "local_words must be at least 1");
  if (machine_count < 1) fail(ErrorCode::kConfig, "machine_count must be at least 1");
  if (bandwidth_words < 1) fail(ErrorCode::kConfig, "bandwidth_words must be at least 1");
  if (machine_count * local_words < n + m) {
    fail(ErrorCode::kConfig, "machine_count * local_words = " +
                                 std::to_string(machine_count * local_words) +
                                 " cannot hold the input (" + std::to_string(n + m) + " words)");
  }
}

std::uint64_t MachineConfig::fanout() const {
  auto f = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), delta / 2) - 1e-9));
  return std::max<std::uint64_t>(2, f);
}

std::uint32_t MachineConfig::depth_bound() const {
  return static_cast<std::uint32_t>(std::ceil(2.0 / delta - 1e-9)) + 1;
}

std::string MachineConfig::to_json() const {
  nlohmann::json j = {{"n", n},
                      {"delta", delta},
                      {"c_loc", c_loc},
                      {"local_words", local_words},
                      {"machine_count", machine_count},
                      {"bandwidth_words", bandwidth_words},
                      {"strict_mode", strict_mode}};
  return j.dump();
}

}  // namespace fmpc::mpc
