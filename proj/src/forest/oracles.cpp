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

#include "forest/oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "common/error.hpp"

namespace fmpc::forest {

std::map<NodeId, NodeId> oracle_components(const Forest& f) {
  const Index n = f.size();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : f.edges()) {
    Index ra = find(a), rb = find(b);
    // Keep the larger index as representative; indices are ID-ordered.
    if (ra < rb) parent[ra] = rb;
    else if (rb < ra) parent[rb] = ra;
  }
  std::map<NodeId, NodeId> out;
  for (Index v = 0; v < n; ++v) out[f.id(v)] = f.id(find(v));
  return out;
}

std::vector<NodeId> bfs_component_max(const Forest& f) {
  const Index n = f.size();
  std::vector<NodeId> out(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Index> comp;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    comp.clear();
    std::deque<Index> queue{s};
    seen[s] = true;
    NodeId best = f.id(s);
    while (!queue.empty()) {
      Index v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      best = std::max(best, f.id(v));
      for (Index u : f.neighbors(v)) {
        if (!seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    for (Index v : comp) out[v] = best;
  }
  return out;
}

SubtreeSizes oracle_subtree_sizes(const Forest& f, NodeId root_id) {
  Index root = f.index_of(root_id);
  std::vector<Index> order{root};
  std::vector<Index> parent(f.size(), kNoIndex);
  std::vector<std::uint64_t> depth(f.size(), 0);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Index v = order[i];
    for (Index u : f.neighbors(v)) {
      if (parent[u] == kNoIndex) {
        parent[u] = v;
        depth[u] = depth[v] + 1;
        order.push_back(u);
      }
    }
  }
  std::vector<std::uint64_t> size(f.size(), 1);
  SubtreeSizes out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Index v = *it;
    if (v != root) size[parent[v]] += size[v];
    out.depth = std::max(out.depth, depth[v]);
  }
  for (Index v : order) {
    out.size[f.id(v)] = size[v];
    out.sum += size[v];
  }
  out.bound = order.size() * (out.depth + 1);
  return out;
}

SideSizes::SideSizes(const Forest& f) {
  const Index n = f.size();
  offsets_.assign(n + 1, 0);
  for (Index v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + f.degree(v);
  side_.assign(offsets_[n], 0);
  comp_size_.assign(n, 0);
  std::vector<Index> parent(n, kNoIndex);
  std::vector<std::uint64_t> sub(n, 1);
  std::vector<Index> order;
  for (Index s = 0; s < n; ++s) {
    if (parent[s] != kNoIndex) continue;
    order.clear();
    order.push_back(s);
    parent[s] = s;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Index u : f.neighbors(order[i])) {
        if (parent[u] == kNoIndex) {
          parent[u] = order[i];
          order.push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != s) sub[parent[*it]] += sub[*it];
    }
    const std::uint64_t total = order.size();
    for (Index v : order) {
      comp_size_[v] = total;
      auto nb = f.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        Index u = nb[i];
        side_[offsets_[v] + i] = (parent[u] == v && u != s) ? total - sub[u] : sub[v];
      }
    }
  }
}

LightHeavy classify_light_heavy(const Forest& f, std::uint64_t light_threshold) {
  const Index n = f.size();
  SideSizes sides(f);
  LightHeavy out;
  out.heavy.assign(n, false);
  out.light_ports.assign(n, {});
  for (Index v = 0; v < n; ++v) {
    for (Port p = 1; p <= f.degree(v); ++p) {
      if (sides.away_from(v, p) <= light_threshold) out.light_ports[v].push_back(p);
    }
    // Isolated nodes count as light: the whole component is within threshold.
    out.heavy[v] = f.degree(v) > 0 ? out.light_ports[v].empty() : false;
    if (out.light_ports[v].size() > 1 && !out.heavy[v]) {
      // Two light directions are only possible when the component is tiny.
      if (sides.component_size(v) > 2 * light_threshold) out.unique_light_direction = false;
    }
  }
  // Heavy nodes induce a connected subgraph in every component.
  std::vector<Index> comp = component_roots(f);
  std::vector<bool> seen(n, false);
  std::vector<bool> comp_done(n, false);
  for (Index s = 0; s < n; ++s) {
    if (!out.heavy[s] || comp_done[comp[s]]) continue;
    comp_done[comp[s]] = true;
    std::vector<Index> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index u : f.neighbors(v)) {
        if (out.heavy[u] && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (out.heavy[v] && !seen[v]) out.heavy_connected = false;
  }
  // Everything behind a light node's light direction is light.
  for (Index v = 0; v < n && out.light_side_all_light; ++v) {
    for (Port p : out.light_ports[v]) {
      Index u = f.neighbor(v, p);
      std::vector<Index> stack{v};
      std::vector<Index> visited{v};
      std::vector<Index> from{u};
      while (!stack.empty()) {
        Index x = stack.back();
        Index px = from.back();
        stack.pop_back();
        from.pop_back();
        if (out.heavy[x]) {
          out.light_side_all_light = false;
          break;
        }
        for (Index y : f.neighbors(x)) {
          if (y != px) {
            stack.push_back(y);
            from.push_back(x);
          }
        }
      }
      if (!out.light_side_all_light) break;
    }
  }
  return out;
}

Diameters diameter(const Forest& f) {
  const Index n = f.size();
  std::vector<std::uint64_t> dist(n, ~std::uint64_t{0});
  std::vector<std::uint64_t> dist2(n, ~std::uint64_t{0});
  auto bfs = [&](Index s, std::vector<std::uint64_t>& d) {
    std::vector<Index> order{s};
    d[s] = 0;
    Index far = s;
    for (std::size_t i = 0; i < order.size(); ++i) {
      Index v = order[i];
      if (d[v] > d[far]) far = v;
      for (Index u : f.neighbors(v)) {
        if (d[u] == ~std::uint64_t{0}) {
          d[u] = d[v] + 1;
          order.push_back(u);
        }
      }
    }
    return far;
  };
  Diameters out;
  for (Index s = 0; s < n; ++s) {
    if (dist[s] != ~std::uint64_t{0}) continue;
    Index a = bfs(s, dist);
    Index b = bfs(a, dist2);
    out.per_component.push_back(dist2[b]);
    out.max = std::max(out.max, dist2[b]);
  }
  return out;
}

}  // namespace fmpc::forest
