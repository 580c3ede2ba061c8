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

#include "common/error.hpp"
#include "maxid/clst.hpp"
#include "maxid/knowledge.hpp"
#include "maxid/phase_graph.hpp"

namespace fmpc::maxid {

namespace {

struct Run {
  LocalIndex x = kNone;  // endpoint next to nodes.front()
  LocalIndex y = kNone;  // endpoint next to nodes.back()
  std::vector<LocalIndex> nodes;
};

std::vector<Run> find_runs(const PhaseGraph& pg) {
  std::vector<Run> runs;
  std::vector<char> seen(pg.size(), 0);
  for (LocalIndex s = 0; s < pg.size(); ++s) {
    if (pg.degree(s) != 2 || seen[s]) continue;
    // Walk to one end, then collect the run from there.
    LocalIndex prev = pg.neighbor(s, 2), cur = s;
    while (pg.degree(cur) == 2) {
      LocalIndex next = pg.neighbor(cur, 1) == prev ? pg.neighbor(cur, 2) : pg.neighbor(cur, 1);
      prev = cur;
      cur = next;
    }
    Run run;
    run.x = cur;
    LocalIndex from = cur;
    cur = prev;
    while (pg.degree(cur) == 2) {
      seen[cur] = 1;
      run.nodes.push_back(cur);
      LocalIndex next = pg.neighbor(cur, 1) == from ? pg.neighbor(cur, 2) : pg.neighbor(cur, 1);
      from = cur;
      cur = next;
    }
    run.y = cur;
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace

std::uint32_t compress_paths(MaxIdState& st, std::uint32_t phase, const ResolvedParams& params,
                             mpc::Simulator& sim) {
  PhaseGraph pg(st.graph);
  std::vector<Run> runs = find_runs(pg);
  const std::uint64_t base = 3 + Knowledge::kStateWords;

  // Knowledge of a run node is the interval [lo, hi] of run positions minus
  // itself. Intervals stay monotone in the position, so the union over all
  // known nodes is read off the two extreme members.
  std::vector<std::vector<std::uint32_t>> lo(runs.size()), hi(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::uint32_t k = static_cast<std::uint32_t>(runs[r].nodes.size());
    lo[r].resize(k);
    hi[r].resize(k);
    for (std::uint32_t j = 0; j < k; ++j) {
      lo[r][j] = j == 0 ? 0 : j - 1;
      hi[r][j] = j + 1 == k ? j : j + 1;
    }
  }
  auto complete = [&] {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const std::uint32_t k = static_cast<std::uint32_t>(runs[r].nodes.size());
      for (std::uint32_t j = 0; j < k; ++j) {
        if (lo[r][j] != 0 || hi[r][j] + 1 != k) return false;
      }
    }
    return true;
  };

  std::uint32_t iterations = 0;
  bool done = complete();
  while (!done && iterations < params.iterations) {
    // Query round, then response round.
    std::vector<std::vector<std::uint64_t>> prefix(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& nodes = runs[r].nodes;
      const std::uint32_t k = static_cast<std::uint32_t>(nodes.size());
      prefix[r].assign(k + 1, 0);
      for (std::uint32_t j = 0; j < k; ++j) prefix[r][j + 1] = prefix[r][j] + hi[r][j] - lo[r][j];
      for (std::uint32_t j = 0; j < k; ++j) {
        std::uint64_t known = hi[r][j] - lo[r][j];
        sim.charge_outgoing(pg.global(nodes[j]), known, known);
        // Nodes whose interval contains j, excluding j itself.
        auto a = std::lower_bound(hi[r].begin(), hi[r].end(), j) - hi[r].begin();
        auto b = std::upper_bound(lo[r].begin(), lo[r].end(), j) - lo[r].begin();
        std::uint64_t askers = static_cast<std::uint64_t>(b - a) - 1;
        sim.charge_incoming(pg.global(nodes[j]), askers, askers);
      }
    }
    sim.end_round();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& nodes = runs[r].nodes;
      const std::uint32_t k = static_cast<std::uint32_t>(nodes.size());
      for (std::uint32_t j = 0; j < k; ++j) {
        std::uint64_t known = hi[r][j] - lo[r][j];
        auto a = std::lower_bound(hi[r].begin(), hi[r].end(), j) - hi[r].begin();
        auto b = std::upper_bound(lo[r].begin(), lo[r].end(), j) - lo[r].begin();
        std::uint64_t askers = static_cast<std::uint64_t>(b - a) - 1;
        sim.charge_outgoing(pg.global(nodes[j]), askers * known, askers);
        std::uint64_t in = prefix[r][hi[r][j] + 1] - prefix[r][lo[r][j]] - known;
        sim.charge_incoming(pg.global(nodes[j]), in, known);
      }
    }
    sim.end_round();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::vector<std::uint32_t> nlo(lo[r].size()), nhi(hi[r].size());
      for (std::size_t j = 0; j < lo[r].size(); ++j) {
        nlo[j] = lo[r][lo[r][j]];
        nhi[j] = hi[r][hi[r][j]];
      }
      lo[r] = std::move(nlo);
      hi[r] = std::move(nhi);
      for (std::size_t j = 0; j < lo[r].size(); ++j) {
        Index g = pg.global(runs[r].nodes[j]);
        sim.set_stored(g, base + st.retained[g] + hi[r][j] - lo[r][j]);
      }
    }
    ++iterations;
    done = complete();
    sim.aggregate(pg.size(), 1);
    sim.aggregate(pg.size(), 1);
  }
  if (!done) {
    fail(ErrorCode::kPhaseFailure, "path not learned within " + std::to_string(params.iterations) +
                                       " iterations");
  }
  if (runs.empty()) return 0;

  // The highest-ID run node asks both end nodes for their outer neighbours.
  for (const auto& run : runs) {
    LocalIndex top = *std::max_element(run.nodes.begin(), run.nodes.end());
    sim.send(pg.global(top), pg.global(run.nodes.front()), 1);
    sim.send(pg.global(top), pg.global(run.nodes.back()), 1);
  }
  sim.end_round();
  for (const auto& run : runs) {
    LocalIndex top = *std::max_element(run.nodes.begin(), run.nodes.end());
    sim.send(pg.global(run.nodes.front()), pg.global(top), 1);
    sim.send(pg.global(run.nodes.back()), pg.global(top), 1);
  }
  sim.end_round();

  std::vector<CompressionEvent> events;
  for (const auto& run : runs) {
    CompressionEvent e;
    e.phase = phase;
    e.step = Step::kPath;
    Index gx = pg.global(run.x), gy = pg.global(run.y);
    e.absorber = std::max(gx, gy);
    LocalIndex prev = run.x;
    for (LocalIndex v : run.nodes) {
      e.absorbed.push_back(pg.global(v));
      e.removed.push_back(make_edge(pg.global(prev), pg.global(v)));
      prev = v;
    }
    e.removed.push_back(make_edge(pg.global(prev), gy));
    e.added.push_back(make_edge(gx, gy));
    events.push_back(std::move(e));
  }
  for (const auto& e : events) {
    for (Index x : e.absorbed) sim.send(x, e.absorber, 1);
  }
  sim.end_round();
  for (auto& e : events) {
    Index gx = e.added.front().first, gy = e.added.front().second;
    Index dx = st.graph.degree(gx), dy = st.graph.degree(gy);
    record_event(st, std::move(e));
    sim.checks().require(st.graph.degree(gx) == dx && st.graph.degree(gy) == dy, "path-degree",
                         "path compression changed an endpoint degree");
  }
  for (const auto& run : runs) {
    for (LocalIndex v : run.nodes) sim.set_stored(pg.global(v), st.retained[pg.global(v)]);
    for (LocalIndex v : {run.x, run.y}) {
      Index g = pg.global(v);
      sim.set_stored(g, 1 + st.graph.degree(g) + st.retained[g]);
    }
  }
  return iterations;
}

}  // namespace fmpc::maxid
