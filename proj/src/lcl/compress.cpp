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

#include <algorithm>
#include <map>

#include "common/error.hpp"
#include "lcl/state.hpp"

namespace fmpc::lcl {

namespace {

bool has(LabelMask m, Label l) { return (m >> l) & 1u; }

// Labels on the near side of e compatible with some label of far_mask on the far side.
LabelMask lift(const LEdge& e, Index far, LabelMask far_mask) {
  LabelMask out = 0;
  for (const auto& pr : e.psi) {
    const Label f = far == e.a ? pr.first : pr.second;
    const Label nl = far == e.a ? pr.second : pr.first;
    if (has(far_mask, f)) out |= LabelMask{1} << nl;
  }
  return out;
}

bool pair_ok(const LEdge& e, Index v, Label at_v, Label at_other) {
  const std::pair<Label, Label> pr = v == e.a ? std::pair{at_v, at_other} : std::pair{at_other, at_v};
  return std::binary_search(e.psi.begin(), e.psi.end(), pr);
}

// F(w) from the tuples of w and the sets already computed for its children.
LabelMask feasible(const LclState& st, Index w, std::uint32_t parent_edge,
                   const std::vector<std::pair<Index, std::uint32_t>>& kids) {
  const Port pp = st.ct.edges[parent_edge].port_at(w);
  std::vector<std::pair<Port, LabelMask>> need;
  for (auto [c, ec] : kids) need.emplace_back(st.ct.edges[ec].port_at(w), lift(st.ct.edges[ec], c, st.feas[c]));
  LabelMask out = 0;
  for (const Tuple& t : *st.ct.phi[w]) {
    bool ok = true;
    for (auto [q, m] : need) ok = ok && has(m, t[q - 1]);
    if (ok) out |= LabelMask{1} << t[pp - 1];
  }
  return out;
}

}  // namespace

LabelMask completion_labels(const LclState& st, Index root, Index child, std::uint32_t edge) {
  (void)root;
  return lift(st.ct.edges[edge], child, st.feas[child]);
}

std::uint64_t compress_subtrees(LclState& st, const CssResult& css, const GatherResult& gs,
                                std::uint32_t phase, mpc::Simulator* sim) {
  std::uint64_t absorbed = 0;
  for (Index v = 0; v < st.size(); ++v) {
    if (!st.alive[v] || css.role[v] != Role::kLocalRoot) continue;
    const auto& held = gs.held[v];
    std::vector<std::pair<Port, LabelMask>> filters;
    std::vector<SubtreeRecord> recs;
    for (auto [u, eu] : st.children(v)) {
      if (css.role[u] != Role::kLight) continue;
      SubtreeRecord rec;
      rec.phase = phase;
      rec.root = v;
      rec.nodes.emplace_back(u, eu);
      for (std::size_t i = 0; i < rec.nodes.size(); ++i) {
        const Index w = rec.nodes[i].first;
        if (!std::binary_search(held.begin(), held.end(), w)) {
          fail(ErrorCode::kCorruptState, "local root " + std::to_string(st.id(v)) +
                                             " did not gather node " + std::to_string(st.id(w)));
        }
        for (auto ch : st.children(w)) rec.nodes.push_back(ch);
      }
      for (std::size_t i = rec.nodes.size(); i-- > 0;) {
        const auto [w, pe] = rec.nodes[i];
        st.feas[w] = feasible(st, w, pe, st.children(w));
      }
      filters.emplace_back(st.ct.edges[eu].port_at(v), completion_labels(st, v, u, eu));
      recs.push_back(std::move(rec));
    }
    if (recs.empty()) continue;
    auto phi = std::make_shared<TupleSet>();
    for (const Tuple& t : *st.ct.phi[v]) {
      bool ok = true;
      for (auto [q, m] : filters) ok = ok && has(m, t[q - 1]);
      if (ok) phi->push_back(t);
    }
    st.ct.phi[v] = std::move(phi);
    for (auto& rec : recs) {
      for (auto [w, pe] : rec.nodes) {
        st.alive[w] = 0;
        st.ct.edges[pe].alive = false;
        --st.live_edges;
        ++absorbed;
      }
      if (sim) {
        sim->charge_outgoing(v, rec.nodes.size(), rec.nodes.size());
        for (auto [w, pe] : rec.nodes) sim->charge_incoming(w, 1, 1);
      }
      st.subtree_log.push_back(std::move(rec));
    }
    if (sim) sim->set_stored(v, 1 + st.ct.origdeg[v] + 2 * held.size());
  }
  if (sim) {
    // The feasibility sets travel up inside each gathered subtree (computed
    // locally at the root) and the absorbed nodes are told to retire.
    sim->end_round();
    sim->end_round();
  }
  st.check_empty();
  return absorbed;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> path_distances(std::size_t k, mpc::Simulator* sim,
                                                                    std::uint32_t* iterations) {
  // Positions 0 and k + 1 are the endpoints.
  std::vector<std::size_t> L(k + 2), R(k + 2);
  std::vector<std::uint64_t> lw(k + 2, 1), rw(k + 2, 1);
  for (std::size_t j = 1; j <= k; ++j) {
    L[j] = j - 1;
    R[j] = j + 1;
  }
  auto internal = [&](std::size_t j) { return j >= 1 && j <= k; };
  std::uint32_t it = 0;
  while (true) {
    bool any = false;
    for (std::size_t j = 1; j <= k; ++j) any = any || internal(L[j]) || internal(R[j]);
    if (!any) break;
    ++it;
    const auto L0 = L, R0 = R;
    const auto lw0 = lw, rw0 = rw;
    for (std::size_t j = 1; j <= k; ++j) {
      if (internal(L0[j])) {
        lw[j] = lw0[j] + lw0[L0[j]];
        L[j] = L0[L0[j]];
      }
      if (internal(R0[j])) {
        rw[j] = rw0[j] + rw0[R0[j]];
        R[j] = R0[R0[j]];
      }
    }
    if (sim) {
      sim->end_round();
      sim->end_round();
      sim->aggregate(std::max<std::uint64_t>(k, 1), 1);
    }
  }
  if (iterations) *iterations = it;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(k);
  for (std::size_t j = 1; j <= k; ++j) out[j - 1] = {lw[j], rw[j]};
  return out;
}

std::map<forest::NodeId, std::pair<std::uint64_t, std::uint64_t>> count_distances(const forest::Forest& path,
                                                                                mpc::Simulator* sim) {
  const Index n = path.size();
  std::vector<Index> ends;
  for (Index v = 0; v < n; ++v) {
    if (path.degree(v) > 2) fail(ErrorCode::kInvalidInput, "not a path: degree above 2");
    if (path.degree(v) <= 1) ends.push_back(v);
  }
  if (n < 2 || ends.size() != 2 || path.num_edges() + 1 != n) {
    fail(ErrorCode::kInvalidInput, "not a path with two endpoints");
  }
  const Index h = path.id(ends[0]) > path.id(ends[1]) ? ends[0] : ends[1];
  const Index x = h == ends[0] ? ends[1] : ends[0];
  std::vector<Index> seq{x};
  Index prev = kNoIndex, cur = x;
  while (cur != h) {
    Index nxt = path.neighbor(cur, 1) == prev ? path.neighbor(cur, 2) : path.neighbor(cur, 1);
    prev = cur;
    cur = nxt;
    seq.push_back(cur);
  }
  const auto d = path_distances(seq.size() - 2, sim, nullptr);
  std::map<forest::NodeId, std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t j = 1; j + 1 < seq.size(); ++j) out[path.id(seq[j])] = d[j - 1];
  return out;
}

namespace {

struct Run {
  std::vector<Index> seq;  // x, internal..., y
};

std::vector<Run> find_runs(const LclState& st) {
  const Index n = st.size();
  auto internal = [&](Index v) { return st.alive[v] && st.parent[v] != kNoIndex && st.degree(v) == 2; };
  std::vector<char> seen(n, 0);
  std::vector<Run> runs;
  for (Index v = 0; v < n; ++v) {
    if (seen[v] || !internal(v)) continue;
    const auto ev = st.edges_at(v);
    std::vector<Index> side[2];
    for (int s = 0; s < 2; ++s) {
      Index prev = v, cur = st.ct.edges[ev[s]].other(v);
      while (true) {
        side[s].push_back(cur);
        if (!internal(cur)) break;
        const auto ec = st.edges_at(cur);
        Index nxt = st.ct.edges[ec[0]].other(cur);
        if (nxt == prev) nxt = st.ct.edges[ec[1]].other(cur);
        prev = cur;
        cur = nxt;
      }
    }
    Run r;
    r.seq.assign(side[0].rbegin(), side[0].rend());
    r.seq.push_back(v);
    r.seq.insert(r.seq.end(), side[1].begin(), side[1].end());
    for (std::size_t j = 1; j + 1 < r.seq.size(); ++j) seen[r.seq[j]] = 1;
    runs.push_back(std::move(r));
  }
  return runs;
}

void splice(LclState& st, Index v, std::uint32_t phase, std::uint32_t layer) {
  const auto ev = st.edges_at(v);
  const std::uint32_t e = ev[0], e2 = ev[1];
  const Index u = st.ct.edges[e].other(v), w = st.ct.edges[e2].other(v);
  const Port pu = st.ct.edges[e].port_at(u), pw = st.ct.edges[e2].port_at(w);
  const Port qe = st.ct.edges[e].port_at(v), qe2 = st.ct.edges[e2].port_at(v);
  const std::uint32_t k = st.outputs;
  std::vector<LabelMask> A(k, 0), B(k, 0), XY(k, 0);
  for (const auto& pr : st.ct.edges[e].psi) {
    A[CompatibilityTree::side(st.ct.edges[e], v, pr)] |= LabelMask{1} << CompatibilityTree::side(st.ct.edges[e], u, pr);
  }
  for (const auto& pr : st.ct.edges[e2].psi) {
    B[CompatibilityTree::side(st.ct.edges[e2], v, pr)] |= LabelMask{1} << CompatibilityTree::side(st.ct.edges[e2], w, pr);
  }
  for (const Tuple& t : *st.ct.phi[v]) XY[t[qe - 1]] |= LabelMask{1} << t[qe2 - 1];
  std::vector<LabelMask> R(k, 0);  // R[l1] = compatible l2
  for (std::uint32_t x = 0; x < k; ++x) {
    for (std::uint32_t y = 0; y < k; ++y) {
      if (!has(XY[x], static_cast<Label>(y))) continue;
      for (std::uint32_t l1 = 0; l1 < k; ++l1) {
        if (has(A[x], static_cast<Label>(l1))) R[l1] |= B[y];
      }
    }
  }
  LEdge ne;
  ne.a = u;
  ne.b = w;
  ne.pa = pu;
  ne.pb = pw;
  for (std::uint32_t l1 = 0; l1 < k; ++l1) {
    for (std::uint32_t l2 = 0; l2 < k; ++l2) {
      if (has(R[l1], static_cast<Label>(l2))) ne.psi.emplace_back(static_cast<Label>(l1), static_cast<Label>(l2));
    }
  }
  if (ne.psi.empty()) st.unsolvable = true;
  const auto enew = static_cast<std::uint32_t>(st.ct.edges.size());
  st.ct.edges.push_back(std::move(ne));
  st.ct.edges[e].alive = false;
  st.ct.edges[e2].alive = false;
  st.ct.port_edge[u][pu - 1] = enew;
  st.ct.port_edge[w][pw - 1] = enew;
  st.alive[v] = 0;
  --st.live_edges;
  SpliceRecord rec;
  rec.phase = phase;
  rec.layer = layer;
  rec.v = v;
  rec.e = e;
  rec.e2 = e2;
  rec.enew = enew;
  rec.parent_of_v = st.parent[v];
  rec.child_of_v = st.parent[v] == u ? w : u;
  st.parent[rec.child_of_v] = rec.parent_of_v;
  st.splice_log.push_back(rec);
}

}  // namespace

std::uint32_t advanced_compress_paths(LclState& st, std::uint32_t phase, mpc::Simulator* sim) {
  const auto runs = find_runs(st);
  if (sim) sim->end_round();  // neighbours exchange degrees and find run ends
  const Index n = st.size();
  std::vector<std::uint64_t> d(n, 0);
  std::vector<char> pending(n, 0);
  std::uint32_t max_it = 0;
  std::uint64_t in_runs = 0;
  for (const Run& r : runs) {
    const std::size_t k = r.seq.size() - 2;
    std::uint32_t it = 0;
    const auto dist = path_distances(k, nullptr, &it);
    max_it = std::max(max_it, it);
    const bool head_is_y = st.id(r.seq.back()) > st.id(r.seq.front());
    for (std::size_t j = 1; j <= k; ++j) {
      d[r.seq[j]] = head_is_y ? dist[j - 1].second : dist[j - 1].first;
      pending[r.seq[j]] = 1;
    }
    in_runs += k;
  }
  if (sim) {
    for (std::uint32_t i = 0; i < max_it; ++i) {
      sim->end_round();
      sim->end_round();
      sim->aggregate(std::max<std::uint64_t>(in_runs, 1), 1);
    }
  }
  std::uint32_t layer = 0;
  while (in_runs > 0) {
    const std::uint64_t mod = std::uint64_t{2} << layer;
    std::vector<Index> Z;
    for (Index v = 0; v < n; ++v) {
      if (pending[v] && d[v] % mod != 0) Z.push_back(v);
    }
    for (Index v : Z) {
      for (std::uint32_t e : st.edges_at(v)) {
        const Index u = st.ct.edges[e].other(v);
        const bool indep = !(pending[u] && d[u] % mod != 0);
        if (sim) {
          sim->checks().require(indep, "z-independence",
                                "nodes " + std::to_string(st.id(v)) + " and " + std::to_string(st.id(u)));
        } else if (!indep) {
          fail(ErrorCode::kCorruptState, "layer is not independent");
        }
      }
    }
    for (Index v : Z) {
      splice(st, v, phase, layer);
      pending[v] = 0;
      --in_runs;
      if (sim) {
        sim->send(v, st.ct.edges[st.splice_log.back().enew].a, 2);
        sim->send(v, st.ct.edges[st.splice_log.back().enew].b, 2);
      }
    }
    if (sim) sim->end_round();
    ++layer;
  }
  return layer;
}

void decompress_paths(LclState& st, std::uint32_t phase, mpc::Simulator* sim) {
  std::uint32_t layer = ~0u;
  while (!st.splice_log.empty() && st.splice_log.back().phase == phase) {
    const SpliceRecord rec = st.splice_log.back();
    st.splice_log.pop_back();
    if (sim && layer != ~0u && rec.layer != layer) sim->end_round();
    layer = rec.layer;
    const LEdge& en = st.ct.edges[rec.enew];
    const LEdge& e = st.ct.edges[rec.e];
    const LEdge& e2 = st.ct.edges[rec.e2];
    const Index u = e.other(rec.v), w = e2.other(rec.v);
    if (!st.has_choice[u] || !st.has_choice[w] || !en.alive) {
      fail(ErrorCode::kCorruptState, "splice of node " + std::to_string(st.id(rec.v)) + " unwound out of order");
    }
    const Label l1 = st.chosen[u][e.port_at(u) - 1];
    const Label l2 = st.chosen[w][e2.port_at(w) - 1];
    const Port qe = e.port_at(rec.v), qe2 = e2.port_at(rec.v);
    const Tuple* pick = nullptr;
    for (std::uint32_t x = 0; x < st.outputs && !pick; ++x) {
      if (!pair_ok(e, u, l1, static_cast<Label>(x))) continue;
      for (std::uint32_t y = 0; y < st.outputs && !pick; ++y) {
        if (!pair_ok(e2, w, l2, static_cast<Label>(y))) continue;
        for (const Tuple& t : *st.ct.phi[rec.v]) {
          if (t[qe - 1] == x && t[qe2 - 1] == y) {
            pick = &t;
            break;
          }
        }
      }
    }
    if (!pick) fail(ErrorCode::kCorruptState, "no witness for spliced node " + std::to_string(st.id(rec.v)));
    st.chosen[rec.v] = *pick;
    st.has_choice[rec.v] = 1;
    st.ct.edges[rec.enew].alive = false;
    st.ct.edges[rec.e].alive = true;
    st.ct.edges[rec.e2].alive = true;
    st.ct.port_edge[u][e.port_at(u) - 1] = rec.e;
    st.ct.port_edge[w][e2.port_at(w) - 1] = rec.e2;
    st.alive[rec.v] = 1;
    st.parent[rec.v] = rec.parent_of_v;
    st.parent[rec.child_of_v] = rec.v;
    ++st.live_edges;
    if (sim) {
      sim->send(u, rec.v, 1);
      sim->send(w, rec.v, 1);
    }
  }
  if (sim && layer != ~0u) sim->end_round();
}

void decompress_subtrees(LclState& st, std::uint32_t phase, mpc::Simulator* sim) {
  bool any = false;
  while (!st.subtree_log.empty() && st.subtree_log.back().phase == phase) {
    any = true;
    const SubtreeRecord rec = std::move(st.subtree_log.back());
    st.subtree_log.pop_back();
    std::map<Index, std::vector<std::pair<Index, std::uint32_t>>> kids;
    for (auto [w, pe] : rec.nodes) {
      st.alive[w] = 1;
      st.ct.edges[pe].alive = true;
      ++st.live_edges;
      kids[st.ct.edges[pe].other(w)].emplace_back(w, pe);
    }
    for (auto [w, pe] : rec.nodes) {
      const LEdge& e = st.ct.edges[pe];
      const Index p = e.other(w);
      if (!st.has_choice[p]) {
        fail(ErrorCode::kCorruptState, "parent of node " + std::to_string(st.id(w)) + " has no label yet");
      }
      const Label a = st.chosen[p][e.port_at(p) - 1];
      std::uint32_t b = 0;
      while (b < st.outputs && !(has(st.feas[w], static_cast<Label>(b)) && pair_ok(e, p, a, static_cast<Label>(b)))) ++b;
      if (b == st.outputs) fail(ErrorCode::kCorruptState, "no completion below node " + std::to_string(st.id(p)));
      std::vector<std::pair<Port, LabelMask>> need;
      for (auto [c, ec] : kids[w]) need.emplace_back(st.ct.edges[ec].port_at(w), lift(st.ct.edges[ec], c, st.feas[c]));
      const Port pw = e.port_at(w);
      const Tuple* pick = nullptr;
      for (const Tuple& t : *st.ct.phi[w]) {
        if (t[pw - 1] != b) continue;
        bool ok = true;
        for (auto [q, m] : need) ok = ok && has(m, t[q - 1]);
        if (ok) {
          pick = &t;
          break;
        }
      }
      if (!pick) fail(ErrorCode::kCorruptState, "no tuple for node " + std::to_string(st.id(w)));
      st.chosen[w] = *pick;
      st.has_choice[w] = 1;
    }
    if (sim) {
      sim->charge_outgoing(rec.root, rec.nodes.size(), rec.nodes.size());
      for (auto [w, pe] : rec.nodes) sim->charge_incoming(w, 1, 1);
    }
  }
  if (sim && any) sim->end_round();
}

}  // namespace fmpc::lcl
