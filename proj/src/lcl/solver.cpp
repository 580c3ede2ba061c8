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

#include "lcl/solver.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace fmpc::lcl {

std::uint64_t default_subtree_threshold(std::uint64_t n, double delta) {
  const double h = std::ceil(std::pow(static_cast<double>(std::max<std::uint64_t>(n, 1)), delta / 2));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(h));
}

std::uint32_t lcl_phase_budget(std::uint64_t n, std::uint64_t H) {
  const double num = std::log(static_cast<double>(std::max<std::uint64_t>(n, 2)));
  const double den = std::log(1.0 + static_cast<double>(H) / 2.0);
  return static_cast<std::uint32_t>(std::ceil(num / den)) + 2;
}

LclResult lcl_solver(const forest::Forest& f, const LclProblem& p, const LclParams& params, mpc::Simulator& sim) {
  if (p.outputs.empty() || p.outputs.size() > kMaxOutputs) {
    fail(ErrorCode::kInvalidSpec, "problem needs between 1 and 32 output labels");
  }
  LclResult res;
  const std::uint64_t n = f.size();
  // Validate inputs and degrees before spending rounds on rooting.
  (void)init_compatibility(f, p);
  const cc::RootResult rr = cc::root_forest(f, params.rooting, sim);
  LclState st = make_state(f, p, rr.parent);
  res.parent = rr.parent;
  const std::uint64_t H =
      params.subtree_threshold ? params.subtree_threshold : default_subtree_threshold(n, sim.config().delta);
  res.subtree_threshold = H;
  const std::uint32_t budget = lcl_phase_budget(n, H);
  sim.mark_phase("lcl-compress");
  sim.end_round();  // every node builds phi and psi from its neighbours' inputs
  st.check_empty();
  std::uint32_t phase = 0;
  while (!st.unsolvable && st.live_edges > 0) {
    if (phase >= budget) {
      fail(ErrorCode::kPhaseFailure, "lcl compression did not finish within " + std::to_string(budget) + " phases");
    }
    LclPhaseReport rep;
    rep.phase = phase;
    const CssResult css = count_subtree_sizes(st, H, &sim);
    for (Index v = 0; v < st.size(); ++v) {
      if (!st.alive[v]) continue;
      rep.heavy += css.size[v] == 0;
      rep.local_roots += css.role[v] == Role::kLocalRoot;
    }
    const GatherResult gs = gather_subtrees(st, css, &sim);
    rep.absorbed = compress_subtrees(st, css, gs, phase, &sim);
    if (!st.unsolvable) {
      const std::size_t before = st.splice_log.size();
      rep.layers = advanced_compress_paths(st, phase, &sim);
      rep.spliced = st.splice_log.size() - before;
      st.check_empty();
    }
    for (Index v = 0; v < st.size(); ++v) rep.nodes_after += st.alive[v];
    res.reports.push_back(rep);
    ++phase;
    sim.aggregate(std::max<std::uint64_t>(n, 1), 1);  // termination and unsolvability flags
  }
  res.phases = phase;
  if (st.unsolvable) {
    sim.aggregate(std::max<std::uint64_t>(n, 1), 1);  // every node learns the verdict
    res.solvable = false;
    return res;
  }
  sim.mark_phase("lcl-decompress");
  for (Index v = 0; v < st.size(); ++v) {
    if (!st.alive[v]) continue;
    st.chosen[v] = st.ct.phi[v]->front();
    st.has_choice[v] = 1;
  }
  sim.end_round();
  for (std::uint32_t k = phase; k-- > 0;) {
    decompress_paths(st, k, &sim);
    decompress_subtrees(st, k, &sim);
  }
  res.labels = std::move(st.chosen);
  for (Index v = 0; v < f.size(); ++v) {
    if (!st.has_choice[v]) fail(ErrorCode::kCorruptState, "node " + std::to_string(f.id(v)) + " left unlabeled");
  }
  return res;
}

const char* verify_status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kOk:
      return "ok";
    case VerifyStatus::kNodeViolation:
      return "node-violation";
    case VerifyStatus::kEdgeViolation:
      return "edge-violation";
    case VerifyStatus::kIncomplete:
      return "incomplete";
  }
  return "unknown";
}

VerifyResult verify_lcl(const forest::Forest& f, const LclProblem& p, const std::vector<Tuple>& labels) {
  VerifyResult r;
  auto input = [&](Index v, Port q) { return p.input_index(f.has_inputs() ? f.input(v, q) : ""); };
  for (Index v = 0; v < f.size(); ++v) {
    if (v >= labels.size() || labels[v].size() != f.degree(v)) {
      r.status = VerifyStatus::kIncomplete;
      r.node = f.id(v);
      r.detail = "missing output labels at node " + std::to_string(f.id(v));
      return r;
    }
    for (Label l : labels[v]) {
      if (l >= p.outputs.size()) {
        r.status = VerifyStatus::kIncomplete;
        r.node = f.id(v);
        r.detail = "unknown output label at node " + std::to_string(f.id(v));
        return r;
      }
    }
  }
  for (Index v = 0; v < f.size(); ++v) {
    Multiset m;
    for (Port q = 1; q <= f.degree(v); ++q) m.emplace_back(input(v, q), labels[v][q - 1]);
    if (!p.node_allowed(m)) {
      r.status = VerifyStatus::kNodeViolation;
      r.node = f.id(v);
      r.detail = "node " + std::to_string(f.id(v)) + " violates the node constraint";
      return r;
    }
  }
  for (auto [x, y] : f.edges()) {
    const Port px = f.port_to(x, y), py = f.port_to(y, x);
    if (!p.edge_allowed({input(x, px), labels[x][px - 1]}, {input(y, py), labels[y][py - 1]})) {
      r.status = VerifyStatus::kEdgeViolation;
      r.node = std::min(f.id(x), f.id(y));
      r.other = std::max(f.id(x), f.id(y));
      r.detail = "edge {" + std::to_string(r.node) + ", " + std::to_string(r.other) + "} violates the edge constraint";
      return r;
    }
  }
  return r;
}

}  // namespace fmpc::lcl
