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

#include "maxid/clst.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "common/error.hpp"
#include "maxid/knowledge.hpp"
#include "maxid/phase_graph.hpp"

namespace fmpc::maxid {

namespace {

std::uint64_t ceil_three_quarters(std::uint64_t d) { return (3 * d + 3) / 4; }

// Diameter of every component of a phase graph.
std::vector<std::uint64_t> component_diameters(const PhaseGraph& pg) {
  std::vector<std::uint64_t> out(pg.component_count(), 0);
  std::vector<std::uint32_t> dist(pg.size(), ~0u);
  std::vector<std::uint32_t> dist2(pg.size(), ~0u);
  auto bfs = [&](LocalIndex s, std::vector<std::uint32_t>& d) {
    std::vector<LocalIndex> order{s};
    d[s] = 0;
    LocalIndex far = s;
    for (std::size_t i = 0; i < order.size(); ++i) {
      LocalIndex v = order[i];
      if (d[v] > d[far]) far = v;
      for (LocalIndex u : pg.neighbors(v)) {
        if (d[u] == ~0u) {
          d[u] = d[v] + 1;
          order.push_back(u);
        }
      }
    }
    return far;
  };
  for (std::uint32_t c = 0; c < pg.component_count(); ++c) {
    LocalIndex a = bfs(pg.component_root(c), dist);
    LocalIndex b = bfs(a, dist2);
    out[c] = dist2[b];
  }
  return out;
}

Port happy_port(const PhaseGraph& pg, const Knowledge& k, LocalIndex v, std::uint64_t light) {
  for (Port p = 1; p <= pg.degree(v); ++p) {
    std::uint64_t s = pg.side(v, p);
    if (s <= light && k.away(v, p) + 1 == s) return p;
  }
  return 0;
}

// Distances in the virtual graph H from a light node v to the leaves of its
// light subtree, restricted to that subtree.
std::map<LocalIndex, std::uint32_t> virtual_leaf_distances(const PhaseGraph& pg, const Knowledge& k,
                                                           LocalIndex v, Port light_port,
                                                           std::vector<char>& mark) {
  std::vector<LocalIndex> t = pg.side_nodes(v, light_port);
  for (LocalIndex x : t) mark[x] = 1;
  std::map<LocalIndex, std::vector<LocalIndex>> h;
  for (LocalIndex x : t) {
    for (LocalIndex y : k.all(x)) {
      if (mark[y]) {
        h[x].push_back(y);
        h[y].push_back(x);
      }
    }
  }
  std::map<LocalIndex, std::uint32_t> dist{{v, 0}};
  std::vector<LocalIndex> order{v};
  for (std::size_t i = 0; i < order.size(); ++i) {
    LocalIndex x = order[i];
    for (LocalIndex y : h[x]) {
      if (dist.emplace(y, dist[x] + 1).second) order.push_back(y);
    }
  }
  std::map<LocalIndex, std::uint32_t> out;
  for (LocalIndex x : t) {
    mark[x] = 0;
    if (x != v && pg.degree(x) == 1) out[x] = dist.count(x) ? dist[x] : ~0u;
  }
  return out;
}

}  // namespace

void record_event(MaxIdState& st, CompressionEvent e) {
  e.id_before = st.ids[e.absorber];
  NodeId best = st.ids[e.absorber];
  for (Index x : e.absorbed) best = std::max(best, st.ids[x]);
  apply_event(st.graph, e);
  st.ids[e.absorber] = best;
  st.retained[e.absorber] += e.absorbed.size();
  st.log.push_back(std::move(e));
}

ClstStats compress_light_subtrees(MaxIdState& st, std::uint32_t phase, const ResolvedParams& params,
                                  mpc::Simulator& sim) {
  PhaseGraph pg(st.graph);
  const LocalIndex n = pg.size();
  const std::uint64_t L = params.light;
  const std::uint64_t dhat = params.dhat;
  CheckLog& checks = sim.checks();
  ClstStats stats;
  stats.absorbed_into.assign(st.graph.capacity(), 0);
  const std::uint64_t peak_before = sim.ledger().peak_global;

  Knowledge k(pg);
  for (LocalIndex v = 0; v < n; ++v) {
    k.set_base_words(v, 1 + pg.degree(v) + st.retained[pg.global(v)] + Knowledge::kStateWords);
    k.charge(v, sim);
  }

  // Oracle classification; used for failure detection and assertions only.
  std::vector<char> light(n, 0);
  std::vector<Port> light_port(n, 0);
  for (LocalIndex v = 0; v < n; ++v) {
    for (Port p = 1; p <= pg.degree(v); ++p) {
      if (pg.side(v, p) <= L) {
        light[v] = 1;
        light_port[v] = p;
        break;
      }
    }
    stats.light += light[v];
  }
  std::vector<std::uint64_t> diam = component_diameters(pg);
  auto guess_ok = [&](LocalIndex v) { return dhat >= diam[pg.component(v)]; };

  std::vector<NodeMode> mode(n, NodeMode::kActive);
  std::vector<Port> against(n, 0);
  auto set_mode = [&](LocalIndex v, NodeMode m) {
    mode[v] = m;
    if (m == NodeMode::kFull || m == NodeMode::kSad) {
      if (light[v] && guess_ok(v)) {
        checks.fail("light-full-or-sad", "node " + std::to_string(st.ids[pg.global(v)]) +
                                             " is light but became " +
                                             (m == NodeMode::kFull ? "full" : "sad"));
      }
    }
    if (m == NodeMode::kHappy) {
      checks.require(light[v] != 0, "heavy-happy",
                     "heavy node " + std::to_string(pg.global(v)) + " became happy");
    }
  };
  // Singletons have nothing to do.
  for (LocalIndex v = 0; v < n; ++v) {
    if (pg.degree(v) == 0) mode[v] = NodeMode::kSad;
    else if (pg.degree(v) > L + 1) set_mode(v, NodeMode::kSad);
  }
  auto own_checks = [&](LocalIndex v) {
    if (mode[v] != NodeMode::kActive) return;
    if (Port p = happy_port(pg, k, v, L)) {
      against[v] = p;
      set_mode(v, NodeMode::kHappy);
    } else if (k.size(v) >= params.full) {
      set_mode(v, NodeMode::kFull);
    }
  };
  for (LocalIndex v = 0; v < n; ++v) own_checks(v);

  std::vector<char> mark(n, 0);
  std::vector<std::uint64_t> counts_before;
  for (std::uint32_t it = 0; it < params.iterations; ++it) {
    std::vector<LocalIndex> active;
    for (LocalIndex v = 0; v < n; ++v) {
      if (mode[v] == NodeMode::kActive) active.push_back(v);
    }
    std::map<LocalIndex, std::map<LocalIndex, std::uint32_t>> before;
    if (params.instrument) {
      for (LocalIndex v : active) {
        if (light[v] && guess_ok(v)) before[v] = virtual_leaf_distances(pg, k, v, light_port[v], mark);
      }
    }
    bool changed = false;

    // Probe: one count per known node.
    std::vector<std::vector<std::uint64_t>> counts(active.size());
    std::vector<std::vector<Port>> full_dirs(active.size());
    std::vector<Port> largest(active.size(), 0);
    std::vector<Knowledge::ExpRequest> step3b;
    std::vector<std::size_t> step3b_slot;
    for (std::size_t i = 0; i < active.size(); ++i) {
      LocalIndex v = active[i];
      counts[i] = k.probe_counts(v);
      for (LocalIndex w : k.all(v)) sim.send(pg.global(v), pg.global(w), 1);
      for (Port p = 1; p <= pg.degree(v); ++p) {
        if (counts[i][p - 1] >= L * dhat) full_dirs[i].push_back(p);
      }
      if (!full_dirs[i].empty()) continue;
      Port best = 1;
      for (Port p = 2; p <= pg.degree(v); ++p) {
        if (counts[i][p - 1] > counts[i][best - 1]) best = p;
      }
      bool dominant = true;
      for (Port p = 1; p <= pg.degree(v); ++p) {
        if (p != best && counts[i][best - 1] < dhat * counts[i][p - 1]) dominant = false;
      }
      if (dominant) {
        largest[i] = best;
      } else {
        std::vector<Port> all(pg.degree(v));
        for (Port p = 1; p <= pg.degree(v); ++p) all[p - 1] = p;
        step3b.push_back({v, std::move(all)});
        step3b_slot.push_back(i);
      }
    }
    sim.end_round();
    for (LocalIndex v : active) {
      for (LocalIndex w : k.all(v)) sim.send(pg.global(w), pg.global(v), 1);
    }
    sim.end_round();

    std::vector<std::vector<std::size_t>> sizes_before(step3b.size());
    for (std::size_t j = 0; j < step3b.size(); ++j) {
      LocalIndex v = step3b[j].v;
      for (Port p = 1; p <= pg.degree(v); ++p) sizes_before[j].push_back(k.toward(v, p).size());
    }
    CheckLog* tag_checks = params.instrument ? &checks : nullptr;
    changed |= k.exp(step3b, &sim, tag_checks) > 0;
    for (std::size_t j = 0; j < step3b.size(); ++j) {
      std::size_t i = step3b_slot[j];
      LocalIndex v = active[i];
      Port best = 1;
      for (Port p = 1; p <= pg.degree(v); ++p) {
        std::uint64_t s = k.toward(v, p).size();
        if (s > k.toward(v, best).size()) best = p;
        if (guess_ok(v)) {
          // Union semantics: the new part is bounded by B, the whole by B plus the old part.
          std::uint64_t b = counts[i][p - 1];
          checks.require(b <= dhat * s && s <= b + sizes_before[j][p - 1], "probe-sandwich",
                         "node " + std::to_string(pg.global(v)) + " port " + std::to_string(p));
        }
      }
      largest[i] = best;
    }

    // Steps 1(b)-(d).
    std::vector<Knowledge::ExpRequest> step1;
    std::vector<char> repair(n, 0);
    for (std::size_t i = 0; i < active.size(); ++i) {
      LocalIndex v = active[i];
      if (full_dirs[i].size() >= 2) {
        set_mode(v, NodeMode::kSad);
        changed = true;
        continue;
      }
      Port skip = full_dirs[i].size() == 1 ? full_dirs[i][0] : largest[i];
      std::vector<Port> ports;
      for (Port p = 1; p <= pg.degree(v); ++p) {
        if (p != skip) ports.push_back(p);
      }
      if (full_dirs[i].empty()) repair[v] = 1;
      step1.push_back({v, std::move(ports)});
    }
    changed |= k.exp(step1, &sim, tag_checks) > 0;

    // Step 1(d)ii: every w that knows a repairing node v joins S_v.
    std::vector<std::pair<LocalIndex, LocalIndex>> joins;
    for (LocalIndex w = 0; w < n; ++w) {
      for (Port p = 1; p <= pg.degree(w); ++p) {
        for (LocalIndex x : k.toward(w, p)) {
          if (repair[x]) joins.emplace_back(x, w);
        }
      }
    }
    for (const auto& [x, w] : joins) {
      sim.send(pg.global(w), pg.global(x), 1);
      if (k.add(x, w)) changed = true;
    }
    sim.end_round();
    for (LocalIndex v : active) k.charge(v, sim);

    for (LocalIndex v : active) {
      NodeMode m = mode[v];
      own_checks(v);
      changed |= mode[v] != m;
    }

    // Step 1(e): ask every known node whether it is happy against us.
    std::vector<NodeMode> snapshot = mode;
    std::vector<Port> against_snapshot = against;
    for (LocalIndex v : active) {
      if (mode[v] != NodeMode::kActive) continue;
      std::vector<LocalIndex> known = k.all(v);
      for (LocalIndex w : known) sim.send(pg.global(v), pg.global(w), 1);
    }
    sim.end_round();
    for (LocalIndex v : active) {
      if (mode[v] != NodeMode::kActive) continue;
      std::vector<std::vector<LocalIndex>> extra(pg.degree(v));
      bool any = false;
      for (LocalIndex w : k.all(v)) {
        bool yes = snapshot[w] == NodeMode::kHappy && against_snapshot[w] == pg.direction(w, v);
        if (!yes) {
          sim.send(pg.global(w), pg.global(v), 1);
          continue;
        }
        any = true;
        Port q = pg.direction(v, w);
        std::uint64_t words = 1;
        for (Port r = 1; r <= pg.degree(w); ++r) {
          if (r == against_snapshot[w]) continue;
          const auto& s = k.toward(w, r);
          extra[q - 1].insert(extra[q - 1].end(), s.begin(), s.end());
          words += s.size();
        }
        sim.send(pg.global(w), pg.global(v), words);
      }
      if (!any) continue;
      std::vector<std::vector<LocalIndex>> merged(pg.degree(v));
      std::uint64_t total = 0;
      for (Port q = 1; q <= pg.degree(v); ++q) {
        auto& e = extra[q - 1];
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        const auto& cur = k.toward(v, q);
        std::set_union(cur.begin(), cur.end(), e.begin(), e.end(), std::back_inserter(merged[q - 1]));
        total += merged[q - 1].size();
      }
      for (Port p = 1; p <= pg.degree(v); ++p) {
        std::uint64_t s = pg.side(v, p);
        if (s > L || total - merged[p - 1].size() + 1 != s) continue;
        for (Port q = 1; q <= pg.degree(v); ++q) {
          if (q != p) k.replace(v, q, std::move(merged[q - 1]));
        }
        against[v] = p;
        set_mode(v, NodeMode::kHappy);
        changed = true;
        break;
      }
    }
    sim.end_round();
    for (LocalIndex v : active) {
      if (mode[v] == NodeMode::kActive && k.size(v) >= params.full) {
        set_mode(v, NodeMode::kFull);
        changed = true;
      }
      k.charge(v, sim);
    }

    if (params.instrument) {
      for (const auto& [v, dist] : before) {
        if (mode[v] == NodeMode::kSad || mode[v] == NodeMode::kFull) continue;
        auto after = virtual_leaf_distances(pg, k, v, light_port[v], mark);
        for (const auto& [w, d] : dist) {
          if (d < 4 || d == ~0u) continue;
          checks.require(after[w] <= ceil_three_quarters(d), "path-shortening",
                         "node " + std::to_string(pg.global(v)) + " leaf " +
                             std::to_string(pg.global(w)) + ": " + std::to_string(d) + " -> " +
                             std::to_string(after[w]));
        }
      }
    }

    ++stats.iterations_run;
    // Global fixpoint flag: one reduce, one broadcast.
    sim.aggregate(n, 1);
    sim.aggregate(n, 1);
    if (params.early_exit && !changed) break;
  }

  // Failure detection: every light node must be happy.
  std::uint64_t unhappy_light = 0;
  for (LocalIndex v = 0; v < n; ++v) {
    if (pg.degree(v) > 0 && light[v] && mode[v] != NodeMode::kHappy) ++unhappy_light;
    stats.happy += mode[v] == NodeMode::kHappy;
    stats.full += mode[v] == NodeMode::kFull;
    stats.sad += mode[v] == NodeMode::kSad && pg.degree(v) > 0;
  }
  stats.peak_global = sim.ledger().peak_global - std::min(sim.ledger().peak_global, peak_before);
  if (unhappy_light > 0) {
    fail(ErrorCode::kPhaseFailure,
         std::to_string(unhappy_light) + " light nodes unhappy after light-subtree compression");
  }

  // Steps 2 and 3.
  std::vector<char> merged_comp(pg.component_count(), 0);
  std::vector<CompressionEvent> events;
  for (LocalIndex v = 0; v < n; ++v) {
    if (mode[v] != NodeMode::kHappy) continue;
    LocalIndex u = pg.neighbor(v, against[v]);
    std::uint32_t c = pg.component(v);
    if (mode[u] != NodeMode::kHappy || pg.neighbor(u, against[u]) != v || merged_comp[c]) continue;
    merged_comp[c] = 1;
    std::vector<LocalIndex> all = pg.side_nodes(v, against[v]);
    std::vector<LocalIndex> other = pg.side_nodes(u, against[u]);
    all.insert(all.end(), other.begin(), other.end());
    std::sort(all.begin(), all.end());
    LocalIndex top = all.back();
    CompressionEvent e;
    e.phase = phase;
    e.step = Step::kPairMerge;
    e.absorber = pg.global(top);
    for (LocalIndex x : all) {
      if (x != top) e.absorbed.push_back(pg.global(x));
      for (LocalIndex y : pg.neighbors(x)) {
        if (x < y) e.removed.push_back(make_edge(pg.global(x), pg.global(y)));
      }
    }
    events.push_back(std::move(e));
  }
  for (LocalIndex v = 0; v < n; ++v) {
    if (mode[v] != NodeMode::kHappy || merged_comp[pg.component(v)]) continue;
    LocalIndex u = pg.neighbor(v, against[v]);
    if (mode[u] == NodeMode::kHappy) continue;
    CompressionEvent e;
    e.phase = phase;
    e.step = Step::kSubtree;
    e.absorber = pg.global(u);
    std::vector<LocalIndex> x = pg.side_nodes(v, against[v]);
    std::sort(x.begin(), x.end());
    e.removed.push_back(make_edge(pg.global(v), pg.global(u)));
    for (LocalIndex a : x) {
      e.absorbed.push_back(pg.global(a));
      for (LocalIndex b : pg.neighbors(a)) {
        if (a < b && b != u) e.removed.push_back(make_edge(pg.global(a), pg.global(b)));
      }
    }
    events.push_back(std::move(e));
  }
  // Absorbers announce themselves, absorbed sets report their ids.
  for (const auto& e : events) {
    for (Index x : e.absorbed) sim.send(e.absorber, x, 1);
  }
  sim.end_round();
  for (const auto& e : events) {
    for (Index x : e.absorbed) sim.send(x, e.absorber, 1);
  }
  sim.end_round();
  for (auto& e : events) {
    stats.absorbed += e.absorbed.size();
    stats.absorbed_into[e.absorber] += e.absorbed.size();
    record_event(st, std::move(e));
  }
  for (LocalIndex v = 0; v < n; ++v) {
    Index g = pg.global(v);
    sim.set_stored(g, st.graph.alive(g) ? 1 + st.graph.degree(g) + st.retained[g] : st.retained[g]);
  }
  return stats;
}

}  // namespace fmpc::maxid
