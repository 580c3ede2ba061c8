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

#include "maxid/solver.hpp"

#include <string>

#include "common/error.hpp"
#include "maxid/phase_graph.hpp"

namespace fmpc::maxid {

MaxIdState make_state(const forest::Forest& f) {
  MaxIdState st{DynForest(f), f.ids(), std::vector<std::uint64_t>(f.size(), 0), {}};
  return st;
}

namespace {

// Number of alive nodes per component label of `pg`.
std::vector<std::uint64_t> count_by(const PhaseGraph& pg, const DynForest& g) {
  std::vector<std::uint64_t> cnt(pg.component_count(), 0);
  for (LocalIndex v = 0; v < pg.size(); ++v) {
    if (g.alive(pg.global(v))) ++cnt[pg.component(v)];
  }
  return cnt;
}

}  // namespace

CompressRun maxid_compress(MaxIdState& st, const ResolvedParams& params, mpc::Simulator& sim) {
  CompressRun run;
  CheckLog& checks = sim.checks();
  // Termination flag: every component is a single node.
  sim.aggregate(st.graph.alive_count(), 1);
  while (st.graph.edge_count() > 0) {
    if (run.phases >= params.phase_budget) {
      fail(ErrorCode::kPhaseFailure,
           "phase budget " + std::to_string(params.phase_budget) + " exhausted");
    }
    const std::uint32_t phase = run.phases;
    sim.mark_phase("maxid-phase-" + std::to_string(phase));
    PhaseGraph before(st.graph);
    std::vector<std::uint64_t> n_before(before.component_count());
    for (std::uint32_t c = 0; c < before.component_count(); ++c) {
      n_before[c] = before.component_size(c);
    }

    PhaseReport rep;
    rep.phase = phase;
    rep.nodes_before = st.graph.alive_count();
    ClstStats cs = compress_light_subtrees(st, phase, params, sim);
    rep.subtree_iterations = cs.iterations_run;
    rep.nodes_after_subtrees = st.graph.alive_count();
    std::vector<std::uint64_t> n_heavy = count_by(before, st.graph);
    rep.path_iterations = compress_paths(st, phase, params, sim);
    rep.nodes_after = st.graph.alive_count();
    std::vector<std::uint64_t> n_after = count_by(before, st.graph);

    for (std::uint32_t c = 0; c < before.component_count(); ++c) {
      if (n_heavy[c] < 2) continue;
      checks.require(n_after[c] * params.light < 2 * n_before[c], "shrinkage",
                     "component shrank from " + std::to_string(n_before[c]) + " to " +
                         std::to_string(n_after[c]));
    }
    for (LocalIndex v = 0; v < before.size(); ++v) {
      Index g = before.global(v);
      if (!st.graph.alive(g) || st.graph.degree(g) != 1) continue;
      if (n_heavy[before.component(v)] < 2) continue;
      checks.require(cs.absorbed_into[g] >= params.light, "leaf-provenance",
                     "leaf absorbed only " + std::to_string(cs.absorbed_into[g]) + " nodes");
    }
    run.reports.push_back(rep);
    ++run.phases;
    sim.aggregate(st.graph.alive_count(), 1);
  }
  return run;
}

void maxid_decompress(MaxIdState& st, std::size_t log_begin, mpc::Simulator& sim,
                      const std::function<void(const CompressionEvent&)>& on_revive) {
  if (log_begin > st.log.size()) fail(ErrorCode::kCorruptLog, "log position past the end");
  std::size_t end = st.log.size();
  while (end > log_begin) {
    std::size_t start = end - 1;
    const std::uint32_t phase = st.log[start].phase;
    const Step step = st.log[start].step;
    while (start > log_begin && st.log[start - 1].phase == phase && st.log[start - 1].step == step) {
      --start;
    }
    for (std::size_t i = end; i-- > start;) {
      const CompressionEvent& e = st.log[i];
      revert_event(st.graph, e);
      for (Index x : e.absorbed) {
        st.ids[x] = st.ids[e.absorber];
        sim.send(e.absorber, x, 1);
      }
      st.retained[e.absorber] -= e.absorbed.size();
      if (on_revive) on_revive(e);
    }
    for (std::size_t i = start; i < end; ++i) {
      const CompressionEvent& e = st.log[i];
      sim.set_stored(e.absorber, 1 + st.graph.degree(e.absorber) + st.retained[e.absorber]);
      for (Index x : e.absorbed) sim.set_stored(x, 1 + st.graph.degree(x) + st.retained[x]);
    }
    sim.end_round();
    end = start;
  }
  st.log.resize(log_begin);
}

void maxid_revert(MaxIdState& st, std::size_t log_begin) {
  if (log_begin > st.log.size()) fail(ErrorCode::kCorruptLog, "log position past the end");
  for (std::size_t i = st.log.size(); i-- > log_begin;) {
    const CompressionEvent& e = st.log[i];
    revert_event(st.graph, e);
    st.ids[e.absorber] = e.id_before;
    st.retained[e.absorber] -= e.absorbed.size();
  }
  st.log.resize(log_begin);
}

MaxIdResult maxid_solver(const forest::Forest& f, const MaxIdParams& params, mpc::Simulator& sim) {
  if (f.size() == 0) fail(ErrorCode::kNotATree, "empty graph");
  if (f.num_edges() + 1 != f.size()) fail(ErrorCode::kNotATree, "input has several components");
  if (params.dhat < 2) fail(ErrorCode::kConfig, "dhat must be at least 2");
  MaxIdResult res;
  res.params = resolve(params, f.size(), sim.config().delta);
  MaxIdState st = make_state(f);
  sim.mark_phase("maxid-compress");
  res.run = maxid_compress(st, res.params, sim);
  sim.mark_phase("maxid-decompress");
  maxid_decompress(st, 0, sim);
  res.output = std::move(st.ids);
  return res;
}

}  // namespace fmpc::maxid
