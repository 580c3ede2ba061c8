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

#include "forest/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "common/error.hpp"

namespace fmpc::forest {

namespace {

constexpr std::uint64_t kMaxNodes = 100'000'000;

using Rng = std::mt19937_64;
using LocalEdges = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

void check_size(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidSpec, "instance must have at least one node");
  if (n > kMaxNodes) fail(ErrorCode::kInvalidSpec, "instance too large");
}

void append_path(LocalEdges& edges, std::uint64_t first, std::uint64_t count) {
  for (std::uint64_t i = 1; i < count; ++i) edges.emplace_back(first + i - 1, first + i);
}

// Uniform random labelled tree on `count` nodes via Pruefer decoding.
void append_pruefer_tree(LocalEdges& edges, std::uint64_t first, std::uint64_t count, Rng& rng) {
  if (count <= 1) return;
  if (count == 2) {
    edges.emplace_back(first, first + 1);
    return;
  }
  std::vector<std::uint64_t> code(count - 2);
  for (auto& c : code) c = uniform(rng, 0, count - 1);
  std::vector<std::uint64_t> degree(count, 1);
  for (auto c : code) ++degree[c];
  std::uint64_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::uint64_t leaf = ptr;
  for (auto c : code) {
    edges.emplace_back(first + leaf, first + c);
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(first + leaf, first + count - 1);
}

// Random tree with diameter in [d, 2d]: a spine of d edges plus attachments
// whose height above the spine stays below d/2.
void append_spine_tree(LocalEdges& edges, std::uint64_t first, std::uint64_t count, std::uint64_t d,
                       Rng& rng) {
  append_path(edges, first, d + 1);
  std::uint64_t max_height = d / 2;
  std::vector<std::uint64_t> eligible;
  std::vector<std::uint64_t> height(count, 0);
  if (max_height > 0) {
    for (std::uint64_t i = 0; i <= d; ++i) eligible.push_back(i);
  }
  for (std::uint64_t v = d + 1; v < count; ++v) {
    std::uint64_t p = eligible[uniform(rng, 0, eligible.size() - 1)];
    edges.emplace_back(first + p, first + v);
    height[v] = height[p] + 1;
    if (height[v] < max_height) eligible.push_back(v);
  }
}

// Splits n into k positive parts. With min_part > 1 every part gets at least
// min_part nodes and the remainder is split at random cut points.
std::vector<std::uint64_t> split_sizes(std::uint64_t n, std::uint64_t k, std::uint64_t min_part,
                                       Rng& rng) {
  std::uint64_t spare = n - k * min_part;
  std::vector<std::uint64_t> cuts;
  if (k > 1) {
    std::vector<std::uint64_t> positions(spare + k - 1);
    std::iota(positions.begin(), positions.end(), 0);
    std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), k - 1, rng);
  }
  std::sort(cuts.begin(), cuts.end());
  // Stars and bars: cut positions select k-1 bars among spare+k-1 slots.
  std::vector<std::uint64_t> sizes;
  std::uint64_t prev = 0;
  for (std::uint64_t i = 0; i < cuts.size(); ++i) {
    std::uint64_t bar = cuts[i] - i;
    sizes.push_back(bar - prev + min_part);
    prev = bar;
  }
  sizes.push_back(spare - prev + min_part);
  return sizes;
}

Instance finalize(std::uint64_t n, const LocalEdges& local, const InstanceSpec& spec,
                  bool shuffle_default, Rng& rng, std::optional<std::pair<std::uint64_t, std::uint64_t>> st) {
  std::vector<NodeId> ids(n);
  if (spec.get("sparse", 0) != 0) {
    std::unordered_set<NodeId> used;
    for (auto& id : ids) {
      do {
        id = rng();
      } while (!used.insert(id).second);
    }
  } else {
    std::iota(ids.begin(), ids.end(), NodeId{1});
    if (spec.get("shuffle", shuffle_default ? 1 : 0) != 0) std::shuffle(ids.begin(), ids.end(), rng);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(local.size());
  for (const auto& [a, b] : local) edges.emplace_back(ids[a], ids[b]);
  Instance inst;
  inst.forest = Forest::build(ids, edges);
  if (st) inst.st.emplace(ids[st->first], ids[st->second]);
  return inst;
}

}  // namespace

std::uint64_t InstanceSpec::get(const std::string& key, std::uint64_t fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::uint64_t InstanceSpec::require(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorCode::kInvalidSpec, kind + " requires parameter " + key);
  return it->second;
}

InstanceSpec parse_spec(const std::string& kind, const std::vector<std::string>& tokens,
                        std::uint64_t seed) {
  InstanceSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  for (const auto& tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size()) {
      fail(ErrorCode::kInvalidSpec, "expected key=value, got '" + tok + "'");
    }
    std::string value = tok.substr(eq + 1);
    if (value.find_first_not_of("0123456789") != std::string::npos || value.size() > 19) {
      fail(ErrorCode::kInvalidSpec, "bad value in '" + tok + "'");
    }
    spec.params[tok.substr(0, eq)] = std::stoull(value);
  }
  return spec;
}

const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds = {"path",          "star",          "broom",
                                                 "caterpillar",   "balanced_tree", "random_forest",
                                                 "st_path_family"};
  return kinds;
}

Instance generate(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  LocalEdges edges;
  const std::string& kind = spec.kind;
  if (kind == "path") {
    std::uint64_t len = spec.require("length");
    check_size(len + 1);
    append_path(edges, 0, len + 1);
    return finalize(len + 1, edges, spec, false, rng, std::nullopt);
  }
  if (kind == "star") {
    std::uint64_t leaves = spec.require("leaves");
    check_size(leaves + 1);
    for (std::uint64_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return finalize(leaves + 1, edges, spec, false, rng, std::nullopt);
  }
  if (kind == "broom") {
    std::uint64_t len = spec.require("length");
    std::uint64_t leaves = spec.require("leaves");
    check_size(len + 1 + leaves);
    append_path(edges, 0, len + 1);
    for (std::uint64_t i = 0; i < leaves; ++i) edges.emplace_back(len, len + 1 + i);
    return finalize(len + 1 + leaves, edges, spec, false, rng, std::nullopt);
  }
  if (kind == "caterpillar") {
    std::uint64_t spine, n;
    std::vector<std::uint64_t> legs;
    if (spec.params.count("diameter") != 0) {
      std::uint64_t d = spec.require("diameter");
      n = spec.require("n");
      if (d < 2 || n < d + 1) {
        fail(ErrorCode::kInvalidSpec, "caterpillar needs diameter >= 2 and n >= diameter + 1");
      }
      check_size(n);
      spine = d - 1;
      legs.assign(spine, 0);
      // The two end spine nodes need a leg each for the diameter to be exact.
      std::uint64_t extra = n - spine;
      for (std::uint64_t i = 0; i < extra; ++i) {
        std::uint64_t pos = i == 0 ? 0 : i == 1 ? spine - 1 : (i - 2) % spine;
        ++legs[pos];
      }
    } else {
      std::uint64_t len = spec.require("length");
      std::uint64_t per = spec.require("legs");
      spine = len + 1;
      n = spine * (per + 1);
      check_size(n);
      legs.assign(spine, per);
    }
    append_path(edges, 0, spine);
    std::uint64_t next = spine;
    for (std::uint64_t i = 0; i < spine; ++i) {
      for (std::uint64_t j = 0; j < legs[i]; ++j) edges.emplace_back(i, next++);
    }
    return finalize(n, edges, spec, false, rng, std::nullopt);
  }
  if (kind == "balanced_tree") {
    std::uint64_t d = spec.require("degree");
    std::uint64_t depth = spec.require("depth");
    if (d < 2) fail(ErrorCode::kInvalidSpec, "balanced_tree needs degree >= 2");
    std::uint64_t n = 1, level = 1;
    for (std::uint64_t i = 0; i < depth; ++i) {
      if (level > kMaxNodes / d) fail(ErrorCode::kInvalidSpec, "instance too large");
      level *= d;
      n += level;
    }
    check_size(n);
    for (std::uint64_t v = 1; v < n; ++v) edges.emplace_back((v - 1) / d, v);
    return finalize(n, edges, spec, false, rng, std::nullopt);
  }
  if (kind == "random_forest") {
    std::uint64_t n = spec.require("n");
    check_size(n);
    std::uint64_t k = spec.get("components", 1);
    std::uint64_t d = spec.get("diameter", 0);
    if (k == 0 || k > n) fail(ErrorCode::kInvalidSpec, "components must be in [1, n]");
    if (d > 0 && n / k < d + 1) {
      fail(ErrorCode::kInvalidSpec, "n too small for the requested diameter and component count");
    }
    std::uint64_t first = 0;
    for (std::uint64_t size : split_sizes(n, k, d > 0 ? d + 1 : 1, rng)) {
      if (d > 0) append_spine_tree(edges, first, size, d, rng);
      else append_pruefer_tree(edges, first, size, rng);
      first += size;
    }
    return finalize(n, edges, spec, true, rng, std::nullopt);
  }
  if (kind == "st_path_family") {
    std::uint64_t d = spec.require("diameter");
    std::uint64_t k = spec.get("components", 1);
    if (d == 0 || k == 0) fail(ErrorCode::kInvalidSpec, "st_path_family needs diameter, components >= 1");
    std::vector<std::uint64_t> starts, lengths;
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
      std::uint64_t len = uniform(rng, d, 2 * d);
      starts.push_back(n);
      lengths.push_back(len);
      n += len + 1;
      check_size(n);
    }
    for (std::uint64_t i = 0; i < k; ++i) append_path(edges, starts[i], lengths[i] + 1);
    std::uint64_t s = starts[0];
    bool same = k == 1 || uniform(rng, 0, 1) == 0;
    std::uint64_t t = same ? starts[0] + lengths[0] : starts[1] + lengths[1];
    return finalize(n, edges, spec, true, rng, std::make_pair(s, t));
  }
  fail(ErrorCode::kInvalidSpec, "unknown generator kind '" + kind + "'");
}

}  // namespace fmpc::forest
