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

namespace fmpc::maxid {

struct MaxIdParams {
  std::uint64_t dhat = 2;
  std::uint64_t light = 0;       // L; 0 derives max(4, ceil(n^{delta/8}))
  std::uint64_t full = 0;        // F; 0 derives max(2 L^2, 2 L (dhat + 1))
  std::uint64_t iters_coeff = 4;  // iterations = coeff * ceil(log2 dhat) + 4
  bool instrument = false;        // enables the expensive invariant checks
  bool early_exit = true;         // stop an iteration loop at a global fixpoint
};

struct ResolvedParams {
  std::uint64_t dhat = 2;
  std::uint64_t light = 4;
  std::uint64_t full = 32;
  std::uint32_t iterations = 8;
  std::uint32_t phase_budget = 4;
  bool instrument = false;
  bool early_exit = true;
};

std::uint32_t ceil_log2(std::uint64_t x);

// n is the input size used for derived defaults and the phase budget.
ResolvedParams resolve(const MaxIdParams& p, std::uint64_t n, double delta);

}  // namespace fmpc::maxid
