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

#include "maxid/dynforest.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace fmpc::maxid {

namespace {

[[noreturn]] void corrupt(const std::string& what) { fail(ErrorCode::kCorruptLog, what); }

std::string edge_str(Index a, Index b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

DynForest::DynForest(const forest::Forest& f) : adj_(f.size()), alive_(f.size(), 1) {
  alive_count_ = f.size();
  for (Index v = 0; v < f.size(); ++v) {
    auto nb = f.neighbors(v);
    adj_[v].assign(nb.begin(), nb.end());
    std::sort(adj_[v].begin(), adj_[v].end());
  }
  edge_count_ = f.num_edges();
}

bool DynForest::has_edge(Index a, Index b) const {
  const auto& nb = adj_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

void DynForest::add_edge(Index a, Index b) {
  if (a == b || !alive(a) || !alive(b) || has_edge(a, b)) corrupt("cannot add edge " + edge_str(a, b));
  adj_[a].insert(std::lower_bound(adj_[a].begin(), adj_[a].end(), b), b);
  adj_[b].insert(std::lower_bound(adj_[b].begin(), adj_[b].end(), a), a);
  ++edge_count_;
}

void DynForest::remove_edge(Index a, Index b) {
  if (!has_edge(a, b)) corrupt("missing edge " + edge_str(a, b));
  adj_[a].erase(std::lower_bound(adj_[a].begin(), adj_[a].end(), b));
  adj_[b].erase(std::lower_bound(adj_[b].begin(), adj_[b].end(), a));
  --edge_count_;
}

void DynForest::remove_node(Index v) {
  if (!alive(v) || !adj_[v].empty()) corrupt("cannot remove node " + std::to_string(v));
  alive_[v] = 0;
  --alive_count_;
}

void DynForest::revive_node(Index v) {
  if (alive(v)) corrupt("node " + std::to_string(v) + " is already present");
  alive_[v] = 1;
  ++alive_count_;
}

std::vector<Index> DynForest::alive_nodes() const {
  std::vector<Index> out;
  out.reserve(alive_count_);
  for (Index v = 0; v < capacity(); ++v) {
    if (alive(v)) out.push_back(v);
  }
  return out;
}

std::vector<Edge> DynForest::edge_set() const {
  std::vector<Edge> out;
  for (Index v = 0; v < capacity(); ++v) {
    for (Index u : adj_[v]) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

const char* step_name(Step step) {
  switch (step) {
    case Step::kSubtree: return "subtree";
    case Step::kPath: return "path";
    case Step::kPairMerge: return "pair-merge";
    case Step::kContract: return "contract";
    case Step::kRake: return "rake";
  }
  return "unknown";
}

void apply_event(DynForest& g, const CompressionEvent& e) {
  if (!g.alive(e.absorber)) corrupt("absorber " + std::to_string(e.absorber) + " is not present");
  for (const auto& [a, b] : e.removed) g.remove_edge(a, b);
  for (Index x : e.absorbed) g.remove_node(x);
  for (const auto& [a, b] : e.added) g.add_edge(a, b);
}

void revert_event(DynForest& g, const CompressionEvent& e) {
  if (!g.alive(e.absorber)) corrupt("absorber " + std::to_string(e.absorber) + " is not present");
  for (const auto& [a, b] : e.added) g.remove_edge(a, b);
  for (Index x : e.absorbed) g.revive_node(x);
  for (const auto& [a, b] : e.removed) g.add_edge(a, b);
}

}  // namespace fmpc::maxid
