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

#include "cc/independent_set.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "common/error.hpp"

namespace fmpc::cc {

namespace {

using u128 = unsigned __int128;

u128 vec_of(NodeId key) { return (static_cast<u128>(key) << 1) | 1; }

int parity(u128 x) {
  return (std::popcount(static_cast<std::uint64_t>(x)) +
          std::popcount(static_cast<std::uint64_t>(x >> 64))) & 1;
}

// In-place Walsh-Hadamard transform of a length-256 array.
void fwht(std::array<std::int64_t, 256>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        std::int64_t x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

}  // namespace

IsResult deterministic_is(const maxid::DynForest& g, const std::vector<NodeId>& keys,
                          const std::vector<Index>& U, mpc::Simulator* sim) {
  IsResult res;
  if (U.empty()) return res;
  std::vector<char> in_u(g.capacity(), 0);
  for (Index u : U) {
    if (!g.alive(u) || g.degree(u) != 2) {
      fail(ErrorCode::kInvalidInput, "independent set candidate " + std::to_string(keys[u]) +
                                         " does not have degree 2");
    }
    in_u[u] = 1;
  }
  // Each candidate learns which neighbours are candidates and their keys.
  std::vector<std::vector<Index>> nbrs(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    for (Index w : g.neighbors(U[i])) {
      if (sim) sim->send(U[i], w, 2);
      if (in_u[w]) nbrs[i].push_back(w);
    }
  }
  if (sim) sim->end_round();

  u128 seed = 0;
  const std::uint32_t chunks = (kSeedBits + kChunkBits - 1) / kChunkBits;
  for (std::uint32_t c = 0; c < chunks; ++c) {
    const std::uint32_t lo = c * kChunkBits;
    const u128 prefix_mask = lo == 0 ? 0 : ((static_cast<u128>(1) << lo) - 1);
    const std::uint32_t hi = lo + kChunkBits;
    std::array<std::int64_t, 256> coef{};
    for (std::size_t i = 0; i < U.size(); ++i) {
      std::array<u128, 3> vs{};
      std::size_t k = 0;
      vs[k++] = vec_of(keys[U[i]]);
      for (Index w : nbrs[i]) vs[k++] = vec_of(keys[w]);
      // 8 E[X_u] scaled so that every node sums to the same denominator.
      const std::int64_t weight = std::int64_t{4} >> (k - 1);
      for (std::uint32_t t = 0; t < (1u << k); ++t) {
        u128 x = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (t >> j & 1) x ^= vs[j];
        }
        if ((x >> hi) != 0) continue;  // a free suffix bit averages the term out
        std::int64_t term = weight;
        if (t & 1) term = -term;
        if (parity(x & prefix_mask & seed)) term = -term;
        coef[static_cast<std::size_t>((x >> lo) & 0xFF)] += term;
      }
    }
    fwht(coef);
    std::size_t best = 0;
    for (std::size_t a = 1; a < coef.size(); ++a) {
      if (coef[a] > coef[best]) best = a;
    }
    seed |= static_cast<u128>(best) << lo;
    if (sim) {
      sim->aggregate(U.size(), 256);
      sim->aggregate(U.size(), 1);
    }
  }
  res.seed = seed;
  res.chunks = chunks;

  std::vector<char> coin(g.capacity(), 0);
  for (Index u : U) coin[u] = static_cast<char>(parity(seed & vec_of(keys[u])));
  for (std::size_t i = 0; i < U.size(); ++i) {
    bool take = coin[U[i]];
    for (Index w : nbrs[i]) take = take && !coin[w];
    if (take) res.members.push_back(U[i]);
  }
  std::sort(res.members.begin(), res.members.end());
  if (sim) {
    for (Index u : res.members) {
      for (Index w : g.neighbors(u)) sim->send(u, w, 1);
    }
    sim->end_round();
    sim->checks().require(8 * res.members.size() >= U.size(), "is-size",
                          "independent set of " + std::to_string(res.members.size()) + " from " +
                              std::to_string(U.size()));
  }
  return res;
}

}  // namespace fmpc::cc
