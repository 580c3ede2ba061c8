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

#include "cc/solve.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

#include "cc/process.hpp"
#include "common/error.hpp"
#include "maxid/solver.hpp"

namespace fmpc::cc {

using forest::Forest;
using forest::Index;
using forest::kNoIndex;
using forest::NodeId;

std::vector<std::uint64_t> guess_schedule(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t e = 2; e <= 64; e *= 2) {
    std::uint64_t g = e == 64 ? ~std::uint64_t{0} : std::uint64_t{1} << e;
    out.push_back(g);
    if (g >= n) break;
  }
  return out;
}

namespace {

struct PipelineOutcome {
  std::vector<GuessAttempt> attempts;
  bool fallback = false;
};

// Compresses every component of st down to one node, trying the guesses in
// order and reverting after each failure.
PipelineOutcome compress_all(maxid::MaxIdState& st, const std::vector<NodeId>& keys,
                             const CcParams& params, std::uint64_t n, mpc::Simulator& sim) {
  PipelineOutcome out;
  std::vector<std::uint64_t> guesses;
  if (!params.force_fallback) {
    if (params.start_dhat != 0) guesses.push_back(std::max<std::uint64_t>(2, params.start_dhat));
    for (std::uint64_t g : guess_schedule(n)) {
      if (guesses.empty() || g > guesses.front()) guesses.push_back(g);
    }
  }
  for (std::uint64_t g : guesses) {
    GuessAttempt at;
    at.dhat = g;
    const std::uint64_t start = sim.round();
    sim.mark_phase("guess-" + std::to_string(g));
    maxid::MaxIdParams mp = params.maxid;
    mp.dhat = g;
    maxid::ResolvedParams rp = maxid::resolve(mp, n, sim.config().delta);
    ProcessStats ps = preprocess(st, keys, 3 * maxid::ceil_log2(g), sim);
    at.preprocess_iterations = ps.iterations;
    try {
      maxid::CompressRun run = maxid::maxid_compress(st, rp, sim);
      at.phases = run.phases;
      at.success = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPhaseFailure) throw;
      maxid::maxid_revert(st, 0);
      // Every node reloads its input for the next guess.
      for (Index v = 0; v < st.graph.capacity(); ++v) {
        sim.set_stored(v, 1 + st.graph.degree(v));
      }
      sim.end_round();
    }
    at.rounds = sim.round() - start;
    out.attempts.push_back(at);
    if (at.success) return out;
  }
  sim.mark_phase("fallback");
  out.fallback = true;
  contract_to_singletons(st, keys, sim);
  return out;
}

std::uint64_t effective_n(const Forest& f, const CcParams& params) {
  return params.n_hint != 0 ? params.n_hint : f.size();
}

}  // namespace

CcResult solve_cc(const Forest& f, const CcParams& params, mpc::Simulator& sim) {
  CcResult res;
  maxid::MaxIdState st = maxid::make_state(f);
  PipelineOutcome po = compress_all(st, f.ids(), params, effective_n(f, params), sim);
  res.attempts = std::move(po.attempts);
  res.fallback = po.fallback;
  sim.mark_phase("decompress");
  maxid::maxid_decompress(st, 0, sim);
  res.label = std::move(st.ids);
  return res;
}

namespace {

// Orients the edges revived by undoing e, given the orientation of the
// current graph. Removed edges point towards the absorber, or along the
// replacement edge when there is one.
void orient_revived(const maxid::CompressionEvent& e, std::vector<Index>& parent) {
  Index source = e.absorber;
  if (!e.added.empty()) {
    auto [x, y] = e.added.front();
    if (parent[x] == y) {
      source = y;
    } else if (parent[y] == x) {
      source = x;
    } else {
      fail(ErrorCode::kCorruptState, "replacement edge is not oriented");
    }
  }
  std::map<Index, std::vector<Index>> adj;
  for (auto [a, b] : e.removed) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<Index> queue{source};
  std::map<Index, char> seen{{source, 1}};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Index w : adj[queue[i]]) {
      if (seen.count(w)) continue;
      seen[w] = 1;
      parent[w] = queue[i];
      queue.push_back(w);
    }
  }
}

std::vector<Index> root_tree(const Forest& t, const CcParams& params, std::uint64_t n,
                             mpc::Simulator& sim) {
  maxid::MaxIdState st = maxid::make_state(t);
  compress_all(st, t.ids(), params, n, sim);
  std::vector<Index> parent(t.size(), kNoIndex);
  maxid::maxid_decompress(st, 0, sim,
                          [&](const maxid::CompressionEvent& e) { orient_revived(e, parent); });
  return parent;
}

}  // namespace

RootResult root_forest(const Forest& f, const CcParams& params, mpc::Simulator& sim) {
  RootResult res;
  res.cc = solve_cc(f, params, sim);
  res.label = res.cc.label;
  res.parent.assign(f.size(), kNoIndex);

  std::map<NodeId, std::vector<Index>> comps;
  for (Index v = 0; v < f.size(); ++v) comps[res.label[v]].push_back(v);
  const std::uint64_t n = effective_n(f, params);
  CcParams sub = params;
  sub.n_hint = n;

  sim.mark_phase("rooting");
  std::vector<std::unique_ptr<mpc::Simulator>> sims;
  std::vector<const mpc::Simulator*> parts;
  for (const auto& [label, members] : comps) {
    std::vector<NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::uint64_t> words;
    for (Index v : members) {
      ids.push_back(f.id(v));
      words.push_back(1 + f.degree(v));
      for (Index w : f.neighbors(v)) {
        if (f.id(v) < f.id(w)) edges.emplace_back(f.id(v), f.id(w));
      }
    }
    Forest t = Forest::build(ids, edges);
    sims.push_back(std::make_unique<mpc::Simulator>(sim.config(), words));
    std::vector<Index> p = root_tree(t, sub, n, *sims.back());
    parts.push_back(sims.back().get());
    for (Index i = 0; i < t.size(); ++i) {
      if (p[i] != kNoIndex) res.parent[f.index_of(t.id(i))] = f.index_of(t.id(p[i]));
    }
  }
  sim.absorb_parallel(parts);
  return res;
}

}  // namespace fmpc::cc
