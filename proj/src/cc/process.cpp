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

#include "cc/process.hpp"

#include "cc/independent_set.hpp"
#include "common/error.hpp"
#include "maxid/params.hpp"
#include "maxid/solver.hpp"

namespace fmpc::cc {

using maxid::CompressionEvent;
using maxid::make_edge;
using maxid::Step;

namespace {

void one_iteration(maxid::MaxIdState& st, const std::vector<NodeId>& keys, std::uint32_t it,
                   mpc::Simulator& sim, ProcessStats& stats) {
  maxid::DynForest& g = st.graph;
  std::vector<Index> U;
  for (Index v : g.alive_nodes()) {
    if (g.degree(v) == 2) U.push_back(v);
  }
  // The termination flag rides on the first seed aggregation.
  if (U.empty()) sim.aggregate(g.alive_count(), 1);
  IsResult is = deterministic_is(g, keys, U, &sim);

  std::vector<CompressionEvent> events;
  for (Index v : is.members) {
    Index a = g.neighbors(v)[0], b = g.neighbors(v)[1];
    Index hi = keys[a] > keys[b] ? a : b, lo = hi == a ? b : a;
    CompressionEvent e;
    e.phase = it;
    e.step = Step::kContract;
    e.absorber = hi;
    e.absorbed = {v};
    e.removed = {make_edge(v, a), make_edge(v, b)};
    e.added = {make_edge(lo, hi)};
    events.push_back(std::move(e));
    sim.send(v, hi, 2 + st.retained[v]);
    sim.send(v, lo, 1);
  }
  sim.end_round();
  for (auto& e : events) maxid::record_event(st, std::move(e));
  stats.contracted += is.members.size();

  events.clear();
  for (Index v : g.alive_nodes()) {
    if (g.degree(v) != 1) continue;
    Index u = g.neighbors(v)[0];
    if (g.degree(u) == 1 && keys[u] > keys[v]) continue;
    CompressionEvent e;
    e.phase = it;
    e.step = Step::kRake;
    e.absorber = u;
    e.absorbed = {v};
    e.removed = {make_edge(u, v)};
    events.push_back(std::move(e));
    sim.send(v, u, 2 + st.retained[v]);
  }
  sim.end_round();
  for (auto& e : events) maxid::record_event(st, std::move(e));
  stats.raked += events.size();
  for (Index v = 0; v < g.capacity(); ++v) {
    sim.set_stored(v, g.alive(v) ? 1 + g.degree(v) + st.retained[v] : st.retained[v]);
  }
}

}  // namespace

ProcessStats preprocess(maxid::MaxIdState& st, const std::vector<NodeId>& keys,
                        std::uint32_t iterations, mpc::Simulator& sim) {
  ProcessStats stats;
  for (std::uint32_t it = 0; it < iterations; ++it) {
    if (st.graph.edge_count() == 0) break;
    one_iteration(st, keys, it, sim, stats);
    ++stats.iterations;
  }
  return stats;
}

ProcessStats contract_to_singletons(maxid::MaxIdState& st, const std::vector<NodeId>& keys,
                                    mpc::Simulator& sim) {
  // Every iteration removes all leaves, so a forest on n nodes needs at
  // most n iterations; rake and contract needs O(log n) in practice.
  ProcessStats stats = preprocess(st, keys, static_cast<std::uint32_t>(st.graph.capacity()) + 1, sim);
  if (st.graph.edge_count() != 0) fail(ErrorCode::kInternal, "rake and contract did not finish");
  return stats;
}

void postprocess(maxid::MaxIdState& st, std::size_t log_begin, mpc::Simulator& sim) {
  maxid::maxid_decompress(st, log_begin, sim);
}

}  // namespace fmpc::cc
