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
#include <random>
#include <set>

#include "cc/independent_set.hpp"
#include "cc/process.hpp"
#include "cc/solve.hpp"
#include "doctest.h"
#include "forest/generators.hpp"
#include "forest/oracles.hpp"
#include "helpers.hpp"
#include "maxid/solver.hpp"

using namespace fmpc;
using forest::Forest;
using forest::Index;
using forest::kNoIndex;
using forest::NodeId;
using testing::code_of;
using testing::path_forest;
using testing::sim_for;

namespace {

bool independent(const maxid::DynForest& g, const std::vector<Index>& s) {
  std::set<Index> in(s.begin(), s.end());
  for (Index v : s) {
    for (Index w : g.neighbors(v)) {
      if (in.count(w)) return false;
    }
  }
  return true;
}

// Checks that parents form one rooted tree per component.
void check_orientation(const Forest& f, const std::vector<Index>& parent) {
  auto comp = forest::oracle_components(f);
  std::map<NodeId, int> roots;
  for (Index v = 0; v < f.size(); ++v) {
    if (parent[v] == kNoIndex) {
      ++roots[comp.at(f.id(v))];
      continue;
    }
    REQUIRE(f.port_to(v, parent[v]) != 0);
    Index x = v;
    std::size_t steps = 0;
    while (parent[x] != kNoIndex && steps <= f.size()) {
      x = parent[x];
      ++steps;
    }
    REQUIRE(parent[x] == kNoIndex);
    CHECK(comp.at(f.id(x)) == comp.at(f.id(v)));
  }
  std::set<NodeId> labels;
  for (auto& [id, c] : comp) labels.insert(c);
  CHECK(roots.size() == labels.size());
  for (auto& [c, k] : roots) CHECK(k == 1);
}

}  // namespace

TEST_CASE("deterministic independent set") {
  SUBCASE("eight internal path nodes") {
    Forest f = path_forest(10);
    maxid::DynForest g(f);
    std::vector<Index> U{1, 2, 3, 4, 5, 6, 7, 8};
    auto r = cc::deterministic_is(g, f.ids(), U, nullptr);
    CHECK(r.members.size() >= 1);
    CHECK(independent(g, r.members));
  }
  SUBCASE("all internal nodes of P100") {
    Forest f = path_forest(100);
    maxid::DynForest g(f);
    std::vector<Index> U;
    for (Index v = 1; v < 99; ++v) U.push_back(v);
    auto sim = sim_for(f);
    auto r = cc::deterministic_is(g, f.ids(), U, &sim);
    CHECK(r.members.size() >= 13);
    CHECK(independent(g, r.members));
    CHECK(sim.checks().total() == 0);
  }
  SUBCASE("empty candidate set") {
    Forest f = path_forest(3);
    maxid::DynForest g(f);
    CHECK(cc::deterministic_is(g, f.ids(), {}, nullptr).members.empty());
  }
  SUBCASE("candidate with the wrong degree") {
    Forest f = path_forest(3);
    maxid::DynForest g(f);
    CHECK(code_of([&] { cc::deterministic_is(g, f.ids(), {0}, nullptr); }) ==
          ErrorCode::kInvalidInput);
  }
  SUBCASE("size bound on shuffled paths and caterpillars") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
      auto inst = forest::generate(forest::parse_spec(
          t % 2 ? "path" : "caterpillar",
          t % 2 ? std::vector<std::string>{"length=" + std::to_string(10 + rng() % 3000)}
                : std::vector<std::string>{"length=" + std::to_string(10 + rng() % 3000), "legs=1"},
          rng()));
      const Forest& f = inst.forest;
      maxid::DynForest g(f);
      std::vector<Index> U;
      for (Index v = 0; v < f.size(); ++v) {
        if (f.degree(v) == 2) U.push_back(v);
      }
      auto r = cc::deterministic_is(g, f.ids(), U, nullptr);
      CHECK(8 * r.members.size() >= U.size());
      CHECK(independent(g, r.members));
    }
  }
}

TEST_CASE("preprocessing") {
  SUBCASE("one iteration on P9") {
    Forest f = path_forest(9);
    auto sim = sim_for(f);
    maxid::MaxIdState st = maxid::make_state(f);
    auto ps = cc::preprocess(st, f.ids(), 1, sim);
    CHECK(ps.contracted >= 1);
    CHECK(ps.raked == 2);
    CHECK(st.graph.alive_count() <= 6);
    SUBCASE("and back") {
      cc::postprocess(st, 0, sim);
      CHECK(st.graph.edge_set() == maxid::DynForest(f).edge_set());
      for (Index v = 0; v < f.size(); ++v) CHECK(st.ids[v] >= f.id(v));
    }
  }
  SUBCASE("single node") {
    Forest f = Forest::build({5}, {});
    auto sim = sim_for(f);
    maxid::MaxIdState st = maxid::make_state(f);
    auto ps = cc::preprocess(st, f.ids(), 6, sim);
    CHECK(ps.iterations == 0);
    CHECK(st.log.empty());
  }
  SUBCASE("reduction improves with the guess") {
    double prev = 1.0;
    for (std::uint64_t d : {4, 16}) {
      Forest f = path_forest(d * d * d * 10);
      auto sim = sim_for(f);
      maxid::MaxIdState st = maxid::make_state(f);
      cc::preprocess(st, f.ids(), 3 * maxid::ceil_log2(d), sim);
      double ratio = static_cast<double>(st.graph.alive_count()) / f.size();
      CHECK(ratio < prev);
      prev = ratio;
      cc::postprocess(st, 0, sim);
      CHECK(st.graph.edge_set() == maxid::DynForest(f).edge_set());
    }
  }
  SUBCASE("postprocess spreads labels per component") {
    auto inst = forest::generate(
        forest::parse_spec("random_forest", {"n=3000", "components=7"}, 4));
    const Forest& f = inst.forest;
    auto sim = sim_for(f);
    maxid::MaxIdState st = maxid::make_state(f);
    cc::contract_to_singletons(st, f.ids(), sim);
    CHECK(st.graph.edge_count() == 0);
    cc::postprocess(st, 0, sim);
    auto oc = forest::oracle_components(f);
    for (Index v = 0; v < f.size(); ++v) CHECK(st.ids[v] == oc.at(f.id(v)));
  }
}

TEST_CASE("guess schedule") {
  CHECK(cc::guess_schedule(4) == std::vector<std::uint64_t>{4});
  CHECK(cc::guess_schedule(5) == std::vector<std::uint64_t>{4, 16});
  CHECK(cc::guess_schedule(50000) == std::vector<std::uint64_t>{4, 16, 256, 65536});
}

TEST_CASE("connected components") {
  SUBCASE("two small components") {
    Forest f = Forest::build({}, {{1, 2}, {2, 3}, {7, 9}});
    auto sim = sim_for(f);
    auto r = cc::solve_cc(f, {}, sim);
    CHECK(r.label == std::vector<NodeId>{3, 3, 3, 9, 9});
  }
  SUBCASE("P5 succeeds at the first guess") {
    Forest f = path_forest(5);
    auto sim = sim_for(f);
    auto r = cc::solve_cc(f, {}, sim);
    REQUIRE(r.attempts.size() == 1);
    CHECK(r.attempts[0].dhat == 4);
    CHECK(r.attempts[0].success);
    CHECK(r.label == std::vector<NodeId>(5, 5));
  }
  SUBCASE("random forests and the fallback agree with the oracle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      std::uint64_t n = 2 + rng() % 5000;
      std::uint64_t comps = 1 + rng() % std::min<std::uint64_t>(n, 50);
      auto inst = forest::generate(forest::parse_spec(
          "random_forest", {"n=" + std::to_string(n), "components=" + std::to_string(comps)},
          rng()));
      const Forest& f = inst.forest;
      auto oc = forest::oracle_components(f);
      for (bool fb : {false, true}) {
        auto sim = sim_for(f);
        cc::CcParams p;
        p.force_fallback = fb;
        auto r = cc::solve_cc(f, p, sim);
        CHECK(r.fallback == fb);
        bool same = true;
        for (Index v = 0; v < f.size(); ++v) same = same && r.label[v] == oc.at(f.id(v));
        CHECK(same);
        CHECK(sim.checks().total() == 0);
      }
    }
  }
  SUBCASE("a failing guess is reverted before the next one") {
    auto inst = forest::generate(forest::parse_spec("path", {"length=20000", "shuffle=1"}, 2));
    const Forest& f = inst.forest;
    auto sim = sim_for(f);
    cc::CcParams p;
    p.maxid.iters_coeff = 0;  // path compression gets 4 iterations only
    auto r = cc::solve_cc(f, p, sim);
    NodeId mx = *std::max_element(f.ids().begin(), f.ids().end());
    CHECK(r.label == std::vector<NodeId>(f.size(), mx));
    CHECK(r.attempts.size() + (r.fallback ? 1 : 0) >= 2);
    CHECK_FALSE(r.attempts.front().success);
  }
  SUBCASE("cycles are rejected at build time") {
    CHECK(code_of([] { Forest::build({}, {{1, 2}, {2, 3}, {3, 1}}); }) == ErrorCode::kNotAForest);
  }
}

TEST_CASE("rooting") {
  SUBCASE("P3") {
    Forest f = path_forest(3);
    auto sim = sim_for(f);
    auto r = cc::root_forest(f, {}, sim);
    CHECK(std::count(r.parent.begin(), r.parent.end(), kNoIndex) == 1);
    check_orientation(f, r.parent);
  }
  SUBCASE("star") {
    Forest f = Forest::build({}, {{10, 1}, {10, 2}, {10, 3}});
    auto sim = sim_for(f);
    auto r = cc::root_forest(f, {}, sim);
    check_orientation(f, r.parent);
    for (Index v = 0; v < f.size(); ++v) {
      int hops = 0;
      for (Index x = v; r.parent[x] != kNoIndex; x = r.parent[x]) ++hops;
      CHECK(hops <= 2);
    }
  }
  SUBCASE("100 components") {
    auto inst = forest::generate(
        forest::parse_spec("random_forest", {"n=4000", "components=100"}, 9));
    auto sim = sim_for(inst.forest);
    auto r = cc::root_forest(inst.forest, {}, sim);
    CHECK(std::count(r.parent.begin(), r.parent.end(), kNoIndex) == 100);
    check_orientation(inst.forest, r.parent);
  }
  SUBCASE("a component is rooted the same alone and inside a forest") {
    auto inst = forest::generate(
        forest::parse_spec("random_forest", {"n=2000", "components=5"}, 13));
    const Forest& f = inst.forest;
    auto big_sim = sim_for(f);
    auto big = cc::root_forest(f, {}, big_sim);
    auto oc = forest::oracle_components(f);
    NodeId target = oc.at(f.id(0));
    std::vector<NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (Index v = 0; v < f.size(); ++v) {
      if (oc.at(f.id(v)) != target) continue;
      ids.push_back(f.id(v));
      for (Index w : f.neighbors(v)) {
        if (f.id(v) < f.id(w)) edges.emplace_back(f.id(v), f.id(w));
      }
    }
    Forest c = Forest::build(ids, edges);
    std::vector<std::uint64_t> words(c.size());
    for (Index v = 0; v < c.size(); ++v) words[v] = 1 + c.degree(v);
    mpc::Simulator alone_sim(big_sim.config(), words);
    cc::CcParams p;
    p.n_hint = f.size();
    auto alone = cc::root_forest(c, p, alone_sim);
    for (Index v = 0; v < c.size(); ++v) {
      Index bv = f.index_of(c.id(v));
      NodeId pa = alone.parent[v] == kNoIndex ? 0 : c.id(alone.parent[v]);
      NodeId pb = big.parent[bv] == kNoIndex ? 0 : f.id(big.parent[bv]);
      CHECK(pa == pb);
    }
  }
}
