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

#include "forest/forest.hpp"

#include <algorithm>
#include <numeric>

#include "common/error.hpp"

namespace fmpc::forest {

namespace {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

Forest Forest::build(std::vector<NodeId> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges,
                     const std::vector<HalfEdgeInput>& inputs) {
  for (const auto& [u, v] : edges) {
    nodes.push_back(u);
    nodes.push_back(v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.size() >= kNoIndex) fail(ErrorCode::kInvalidInput, "too many nodes");

  Forest f;
  f.ids_ = std::move(nodes);
  const Index n = f.size();
  std::vector<std::size_t> deg(n, 0);
  f.edges_.reserve(edges.size());
  UnionFind uf(n);
  for (const auto& [a, b] : edges) {
    if (a == b) fail(ErrorCode::kNotAForest, "self-loop at node " + std::to_string(a));
    Index ia = *f.find(a);
    Index ib = *f.find(b);
    if (!uf.unite(ia, ib)) {
      fail(ErrorCode::kNotAForest,
           "edge {" + std::to_string(a) + "," + std::to_string(b) + "} closes a cycle");
    }
    ++deg[ia];
    ++deg[ib];
    f.edges_.emplace_back(ia, ib);
  }
  f.offsets_.assign(n + 1, 0);
  for (Index v = 0; v < n; ++v) f.offsets_[v + 1] = f.offsets_[v] + deg[v];
  f.adj_.assign(f.offsets_[n], kNoIndex);
  std::vector<std::size_t> fill(f.offsets_.begin(), f.offsets_.end() - 1);
  for (const auto& [a, b] : f.edges_) {
    f.adj_[fill[a]++] = b;
    f.adj_[fill[b]++] = a;
  }
  f.inputs_.assign(f.adj_.size(), std::string());
  for (const auto& in : inputs) {
    Index v = f.index_of(in.v);
    Index u = f.index_of(in.u);
    Port p = f.port_to(v, u);
    if (p == 0) {
      fail(ErrorCode::kInvalidInput, "input on non-edge " + std::to_string(in.v) + " " +
                                         std::to_string(in.u));
    }
    f.inputs_[f.offsets_[v] + p - 1] = in.label;
    f.has_inputs_ = true;
  }
  return f;
}

std::optional<Index> Forest::find(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

Index Forest::index_of(NodeId id) const {
  auto idx = find(id);
  if (!idx) fail(ErrorCode::kUnknownNode, "unknown node " + std::to_string(id));
  return *idx;
}

Port Forest::port_to(Index v, Index u) const {
  auto nb = neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (nb[i] == u) return static_cast<Port>(i + 1);
  }
  return 0;
}

std::vector<HalfEdgeInput> Forest::input_list() const {
  std::vector<HalfEdgeInput> out;
  for (Index v = 0; v < size(); ++v) {
    for (Port p = 1; p <= degree(v); ++p) {
      const std::string& label = input(v, p);
      if (!label.empty()) out.push_back({id(v), id(neighbor(v, p)), label});
    }
  }
  return out;
}

std::vector<Index> component_roots(const Forest& f) {
  const Index n = f.size();
  std::vector<Index> root(n, kNoIndex);
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (root[s] != kNoIndex) continue;
    root[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index u : f.neighbors(v)) {
        if (root[u] == kNoIndex) {
          root[u] = s;
          stack.push_back(u);
        }
      }
    }
  }
  return root;
}

}  // namespace fmpc::forest
