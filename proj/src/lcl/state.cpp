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

#include "lcl/state.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace fmpc::lcl {

std::vector<std::uint32_t> LclState::edges_at(Index v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e : ct.port_edge[v]) {
    if (e != kNoEdge && ct.edges[e].alive) out.push_back(e);
  }
  return out;
}

Port LclState::degree(Index v) const { return static_cast<Port>(edges_at(v).size()); }

std::vector<std::pair<Index, std::uint32_t>> LclState::children(Index v) const {
  std::vector<std::pair<Index, std::uint32_t>> out;
  for (std::uint32_t e : edges_at(v)) {
    const Index u = ct.edges[e].other(v);
    if (parent[u] == v) out.emplace_back(u, e);
  }
  return out;
}

bool LclState::check_empty() {
  for (Index v = 0; v < size(); ++v) {
    if (alive[v] && ct.phi[v]->empty()) unsolvable = true;
  }
  for (const LEdge& e : ct.edges) {
    if (e.alive && e.psi.empty()) unsolvable = true;
  }
  return unsolvable;
}

LclState make_state(const forest::Forest& f, const LclProblem& p, const std::vector<Index>& parent) {
  if (parent.size() != f.size()) fail(ErrorCode::kInvalidInput, "parent vector size mismatch");
  LclState st;
  st.forest = &f;
  st.outputs = static_cast<std::uint32_t>(p.outputs.size());
  st.ct = init_compatibility(f, p);
  st.alive.assign(f.size(), 1);
  st.parent = parent;
  st.live_edges = f.num_edges();
  st.feas.assign(f.size(), 0);
  st.chosen.assign(f.size(), {});
  st.has_choice.assign(f.size(), 0);
  for (auto [x, y] : f.edges()) {
    if (parent[x] != y && parent[y] != x) {
      fail(ErrorCode::kInvalidInput, "parent vector does not orient edge {" +
                                         std::to_string(f.id(x)) + ", " + std::to_string(f.id(y)) + "}");
    }
  }
  return st;
}

CssResult count_subtree_sizes(const LclState& st, std::uint64_t H, mpc::Simulator* sim) {
  const Index n = st.size();
  std::vector<std::vector<Index>> C(n);
  std::vector<std::uint64_t> s(n, 0);
  std::vector<char> active(n, 0), heavy(n, 0);
  for (Index v = 0; v < n; ++v) {
    if (!st.alive[v]) continue;
    for (auto [u, e] : st.children(v)) C[v].push_back(u);
    s[v] = 1 + C[v].size();
    active[v] = 1;
  }
  CssResult r;
  auto pending = [&] {
    for (Index v = 0; v < n; ++v)
      if (!C[v].empty()) return true;
    return false;
  };
  while (pending()) {
    ++r.iterations;
    const auto C0 = C;
    const auto s0 = s;
    const auto a0 = active;
    std::uint64_t touched = 0;
    for (Index v = 0; v < n; ++v) {
      if (C0[v].empty()) continue;
      ++touched;
      bool all_active = a0[v] != 0;
      for (Index u : C0[v]) all_active = all_active && a0[u];
      if (sim) {
        // Query each frontier node; it answers with its own frontier and count.
        sim->charge_outgoing(v, C0[v].size(), C0[v].size());
        for (Index u : C0[v]) {
          sim->charge_outgoing(u, C0[u].size() + 2, 1);
          sim->charge_incoming(u, 1, 1);
        }
        std::uint64_t in = 0;
        for (Index u : C0[v]) in += C0[u].size() + 2;
        sim->charge_incoming(v, in, C0[v].size());
      }
      if (all_active) {
        std::vector<Index> next;
        std::uint64_t add = 0;
        for (Index u : C0[v]) {
          next.insert(next.end(), C0[u].begin(), C0[u].end());
          add += s0[u] - 1;
        }
        C[v] = std::move(next);
        s[v] = s0[v] + add;
      } else {
        heavy[v] = 1;
        active[v] = 0;
        C[v].clear();
      }
    }
    for (Index v = 0; v < n; ++v) {
      if (st.alive[v] && !heavy[v] && s[v] > H) {
        heavy[v] = 1;
        active[v] = 0;
        C[v].clear();
      }
    }
    if (sim) {
      sim->end_round();
      sim->end_round();
      sim->aggregate(std::max<std::uint64_t>(touched, 1), 1);
    }
  }
  r.role.assign(n, Role::kLight);
  r.size.assign(n, 0);
  for (Index v = 0; v < n; ++v) {
    if (!st.alive[v]) continue;
    if (heavy[v]) {
      r.role[v] = Role::kHeavy;
    } else {
      r.size[v] = s[v];
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (!st.alive[v] || !heavy[v]) continue;
    for (auto [u, e] : st.children(v)) {
      if (!heavy[u]) {
        r.role[v] = Role::kLocalRoot;
        break;
      }
    }
  }
  // A component without heavy nodes is one light subtree below its root.
  for (Index v = 0; v < n; ++v) {
    if (st.alive[v] && st.parent[v] == kNoIndex && !heavy[v]) r.role[v] = Role::kLocalRoot;
  }
  if (sim) sim->end_round();
  return r;
}

GatherResult gather_subtrees(const LclState& st, const CssResult& css, mpc::Simulator* sim) {
  const Index n = st.size();
  std::vector<std::vector<Index>> C(n);
  GatherResult g;
  g.held.assign(n, {});
  for (Index v = 0; v < n; ++v) {
    if (!st.alive[v] || css.role[v] == Role::kHeavy) continue;
    for (auto [u, e] : st.children(v)) {
      if (css.role[u] == Role::kLight) C[v].push_back(u);
    }
    if (css.role[v] == Role::kLocalRoot) g.held[v] = C[v];
  }
  bool more = false;
  for (Index v = 0; v < n; ++v) more = more || (css.role[v] == Role::kLocalRoot && !C[v].empty());
  while (more) {
    ++g.iterations;
    const auto C0 = C;
    bool grew = false;
    for (Index v = 0; v < n; ++v) {
      if (!st.alive[v] || css.role[v] == Role::kHeavy || C0[v].empty()) continue;
      if (sim) {
        sim->charge_outgoing(v, C0[v].size(), C0[v].size());
        std::uint64_t in = 0;
        for (Index u : C0[v]) {
          in += C0[u].size() + 1;
          sim->charge_incoming(u, 1, 1);
          sim->charge_outgoing(u, C0[u].size() + 1, 1);
        }
        sim->charge_incoming(v, in, C0[v].size());
      }
      std::vector<Index> next;
      for (Index u : C0[v]) next.insert(next.end(), C0[u].begin(), C0[u].end());
      if (css.role[v] == Role::kLocalRoot) {
        const std::size_t before = g.held[v].size();
        g.held[v].insert(g.held[v].end(), next.begin(), next.end());
        std::sort(g.held[v].begin(), g.held[v].end());
        g.held[v].erase(std::unique(g.held[v].begin(), g.held[v].end()), g.held[v].end());
        grew = grew || g.held[v].size() != before;
        C[v] = g.held[v];
      } else {
        C[v] = std::move(next);
      }
    }
    if (sim) {
      sim->end_round();
      sim->end_round();
      sim->aggregate(std::max<std::uint64_t>(n, 1), 1);
      for (Index v = 0; v < n; ++v) {
        if (css.role[v] == Role::kLocalRoot) sim->set_stored(v, 1 + st.ct.origdeg[v] + g.held[v].size());
      }
    }
    bool frontier = false;
    for (Index v = 0; v < n; ++v) frontier = frontier || (css.role[v] == Role::kLight && !C[v].empty());
    more = grew || frontier;
  }
  for (auto& h : g.held) std::sort(h.begin(), h.end());
  return g;
}

}  // namespace fmpc::lcl
