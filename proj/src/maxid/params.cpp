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

#include "maxid/params.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace fmpc::maxid {

std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t r = 0;
  while (r < 64 && (std::uint64_t{1} << r) < x) ++r;
  return r;
}

ResolvedParams resolve(const MaxIdParams& p, std::uint64_t n, double delta) {
  ResolvedParams r;
  r.dhat = std::max<std::uint64_t>(2, p.dhat);
  const double nn = static_cast<double>(std::max<std::uint64_t>(n, 2));
  r.light = p.light != 0
                ? p.light
                : std::max<std::uint64_t>(4, static_cast<std::uint64_t>(std::ceil(std::pow(nn, delta / 8))));
  if (p.full != 0) {
    r.full = p.full;
  } else {
    r.full = std::max(2 * r.light * r.light, 2 * r.light * (r.dhat + 1));
  }
  r.iterations = static_cast<std::uint32_t>(p.iters_coeff * ceil_log2(r.dhat) + 4);
  // Each phase shrinks the tree by a factor L/2; L = 2 gives no guarantee.
  double shrink = std::log(static_cast<double>(r.light) / 2.0);
  if (shrink <= 0) {
    r.phase_budget = static_cast<std::uint32_t>(std::min<std::uint64_t>(n, 1u << 20)) + 2;
  } else {
    r.phase_budget = static_cast<std::uint32_t>(std::ceil(std::log(nn) / shrink)) + 2;
  }
  r.instrument = p.instrument;
  r.early_exit = p.early_exit;
  return r;
}

}  // namespace fmpc::maxid
