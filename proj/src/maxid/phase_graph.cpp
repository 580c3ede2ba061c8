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

#include "maxid/phase_graph.hpp"

#include <algorithm>

namespace fmpc::maxid {

PhaseGraph::PhaseGraph(const DynForest& g) {
  global_ = g.alive_nodes();
  local_.assign(g.capacity(), kNone);
  for (LocalIndex i = 0; i < size(); ++i) local_[global_[i]] = i;
  const LocalIndex n = size();
  off_.assign(n + 1, 0);
  for (LocalIndex v = 0; v < n; ++v) off_[v + 1] = off_[v] + g.degree(global_[v]);
  adj_.resize(off_[n]);
  for (LocalIndex v = 0; v < n; ++v) {
    std::size_t k = off_[v];
    for (Index u : g.neighbors(global_[v])) adj_[k++] = local_[u];
  }

  parent_.assign(n, kNone);
  parent_port_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  sub_.assign(n, 1);
  comp_.assign(n, 0);
  std::vector<std::size_t> next(n, 0);
  std::vector<LocalIndex> stack;
  std::uint32_t clock = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Port>>> kids(n);
  for (LocalIndex s = 0; s < n; ++s) {
    if (parent_[s] != kNone) continue;
    const std::uint32_t c = static_cast<std::uint32_t>(comp_size_.size());
    comp_root_.push_back(s);
    std::uint64_t count = 0;
    parent_[s] = s;
    stack.push_back(s);
    tin_[s] = clock++;
    comp_[s] = c;
    while (!stack.empty()) {
      LocalIndex v = stack.back();
      if (next[v] < degree(v)) {
        Port p = static_cast<Port>(++next[v]);
        LocalIndex u = neighbor(v, p);
        if (u == parent_[v] && v != s) {
          parent_port_[v] = p;
          continue;
        }
        parent_[u] = v;
        tin_[u] = clock++;
        comp_[u] = c;
        kids[v].emplace_back(tin_[u], p);
        stack.push_back(u);
      } else {
        tout_[v] = clock;
        ++count;
        if (v != s) sub_[parent_[v]] += sub_[v];
        stack.pop_back();
      }
    }
    comp_size_.push_back(count);
  }
  child_off_.assign(n + 1, 0);
  for (LocalIndex v = 0; v < n; ++v) child_off_[v + 1] = child_off_[v] + kids[v].size();
  children_.reserve(child_off_[n]);
  for (LocalIndex v = 0; v < n; ++v) children_.insert(children_.end(), kids[v].begin(), kids[v].end());
}

Port PhaseGraph::port_of(LocalIndex v, LocalIndex u) const {
  auto nb = neighbors(v);
  auto it = std::lower_bound(nb.begin(), nb.end(), u);
  if (it == nb.end() || *it != u) return 0;
  return static_cast<Port>(it - nb.begin() + 1);
}

Port PhaseGraph::direction(LocalIndex v, LocalIndex w) const {
  if (tin_[v] < tin_[w] && tin_[w] < tout_[v]) {
    auto first = children_.begin() + static_cast<std::ptrdiff_t>(child_off_[v]);
    auto last = children_.begin() + static_cast<std::ptrdiff_t>(child_off_[v + 1]);
    auto it = std::upper_bound(first, last, std::make_pair(tin_[w], ~Port{0}));
    return std::prev(it)->second;
  }
  return parent_port_[v];
}

std::uint64_t PhaseGraph::side(LocalIndex v, Port p) const {
  LocalIndex u = neighbor(v, p);
  if (parent_[u] == v && u != comp_root_[comp_[v]]) return comp_size_[comp_[v]] - sub_[u];
  return sub_[v];
}

std::vector<LocalIndex> PhaseGraph::side_nodes(LocalIndex v, Port p) const {
  LocalIndex blocked = neighbor(v, p);
  std::vector<LocalIndex> out{v};
  std::vector<std::pair<LocalIndex, LocalIndex>> stack{{v, blocked}};
  while (!stack.empty()) {
    auto [x, from] = stack.back();
    stack.pop_back();
    for (LocalIndex y : neighbors(x)) {
      if (y == from) continue;
      out.push_back(y);
      stack.emplace_back(y, x);
    }
  }
  return out;
}

}  // namespace fmpc::maxid
