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
#include "doctest.h"
#include "helpers.hpp"
#include "mpc/aggtree.hpp"
#include "mpc/config.hpp"
#include "mpc/network.hpp"
#include "mpc/simulator.hpp"

using namespace fmpc;
using namespace fmpc::mpc;
using testing::code_of;

namespace {

struct Count {
  std::uint64_t value = 0;
};

std::vector<std::uint64_t> unit_words(std::size_t n) { return std::vector<std::uint64_t>(n, 1); }

}  // namespace

TEST_CASE("machine config derivation and validation") {
  MachineConfig c = MachineConfig::derive(10000, 9999);
  CHECK(c.local_words == 400);
  CHECK(c.bandwidth_words == 400);
  CHECK(c.machine_count * c.local_words >= c.n + c.m);
  CHECK(c.fanout() == 10);
  CHECK(c.depth_bound() == 5);
  CHECK(code_of([] { MachineConfig::derive(100, 99, 1.0); }) == ErrorCode::kConfig);
  CHECK(code_of([] { MachineConfig::derive(100, 99, 0.5, 4.0, 1); }) == ErrorCode::kConfig);
}

TEST_CASE("run_round accounting") {
  MachineConfig c = MachineConfig::derive(4, 3);
  Simulator sim(c, unit_words(4));
  Network<Count, std::uint64_t> net(sim, {1, 2, 3, 4}, std::vector<Count>(4),
                                    [](const std::uint64_t&) { return 1; });
  using Net = Network<Count, std::uint64_t>;
  SUBCASE("empty step") {
    auto d = net.run_round([](std::uint64_t, const Count& s, std::span<const Net::Envelope>, Net::Outbox&) {
      return s;
    });
    CHECK(d.rounds == 1);
    CHECK(d.message_words == 0);
    CHECK(sim.round() == 1);
  }
  SUBCASE("every node sends one word to one neighbour") {
    auto d = net.run_round([](std::uint64_t self, const Count& s, std::span<const Net::Envelope>,
                              Net::Outbox& out) {
      out.send(self == 4 ? 3 : self + 1, self);
      return s;
    });
    CHECK(d.message_words == 8);
    CHECK(sim.stats().messages_total == 8);
    // Delivered at the barrier, visible to the next round.
    CHECK(net.inbox(2).size() == 1);
    CHECK(net.inbox(3).size() == 2);
    std::size_t delivered = 0;
    for (std::uint64_t id = 1; id <= 4; ++id) delivered += net.inbox(id).size();
    CHECK(delivered == 4);
    net.run_round([](std::uint64_t, const Count& s, std::span<const Net::Envelope> inbox, Net::Outbox&) {
      Count next = s;
      for (const auto& e : inbox) next.value += e.msg;
      return next;
    });
    CHECK(net.state(3).value == 2 + 4);
  }
  SUBCASE("unknown destination") {
    CHECK(code_of([&] {
            net.run_round([](std::uint64_t, const Count& s, std::span<const Net::Envelope>,
                             Net::Outbox& out) {
              out.send(99, 1);
              return s;
            });
          }) == ErrorCode::kRoutingError);
  }
}

TEST_CASE("strict mode turns a bandwidth breach into an error") {
  MachineConfig c = MachineConfig::derive(16, 15, 0.5, 4.0, 0, 0, true);
  Simulator sim(c, unit_words(16));
  sim.send(0, 15, c.local_words + 1);
  CHECK(code_of([&] { sim.end_round(); }) == ErrorCode::kMemoryExceeded);

  MachineConfig lax = c;
  lax.strict_mode = false;
  Simulator sim2(lax, unit_words(16));
  sim2.send(0, 15, lax.local_words + 1);
  sim2.end_round();
  CHECK(sim2.ledger().violation_count >= 1);
}

TEST_CASE("ledger sums and monotone peaks") {
  MachineConfig c = MachineConfig::derive(100, 99);
  Simulator sim(c, std::vector<std::uint64_t>(100, 2));
  std::uint64_t last_peak = 0;
  for (std::uint32_t r = 0; r < 20; ++r) {
    sim.set_stored(r, 5 + r);
    sim.send(r, 99 - r, r);
    sim.end_round();
    std::uint64_t total = 0;
    for (auto w : sim.ledger().per_machine_used) total += w;
    CHECK(total == sim.ledger().global_used);
    CHECK(sim.ledger().peak_global >= last_peak);
    last_peak = sim.ledger().peak_global;
  }
  CHECK(sim.round() == 20);
}

TEST_CASE("a node with degree above local_words spans several machines") {
  const std::uint64_t n = 2000;
  MachineConfig c = MachineConfig::derive(n, n - 1);
  std::vector<std::uint64_t> words(n, 2);
  words[0] = n;  // star centre: 1 + deg words
  Simulator sim(c, words);
  CHECK(c.local_words < n);
  std::uint64_t peak_before = sim.ledger().peak_local;
  sim.send(5, 0, 1);
  sim.end_round();
  CHECK(sim.ledger().violation_count == 0);
  CHECK(sim.ledger().peak_local >= peak_before);
  CHECK(sim.ledger().peak_local <= c.local_words);
}

TEST_CASE("aggregation tree layout") {
  MachineConfig c = MachineConfig::derive(256, 255, 0.5, 0.25);
  REQUIRE(c.local_words == 4);
  REQUIRE(c.fanout() == 4);
  Simulator sim(c, unit_words(256));
  SUBCASE("three elements fit one machine") {
    AggTree t = build_aggregation_tree(sim, {{3, 1, 2}});
    CHECK(t.depth == 0);
    CHECK(t.level_width.empty());
  }
  SUBCASE("one set over four machines") {
    std::vector<std::uint64_t> set(16);
    for (std::uint64_t i = 0; i < 16; ++i) set[i] = i;
    std::uint64_t before = sim.round();
    AggTree t = build_aggregation_tree(sim, {set});
    CHECK(t.leaf_assignment.size() == 4);
    CHECK(t.depth == 1);
    CHECK(t.level_width == std::vector<std::uint64_t>{1});
    CHECK(sim.round() - before <= 2 * t.depth);
    CHECK(t.depth <= c.depth_bound());
  }
  SUBCASE("lexicographic order") {
    AggTree t = build_aggregation_tree(sim, {{5, 1}, {2}});
    CHECK(t.elements == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}, {1, 5}, {2, 2}});
  }
  SUBCASE("reduce and broadcast") {
    AggTree t = build_aggregation_tree(sim, {{1, 2, 3}});
    std::uint64_t before = sim.round();
    CHECK(agg_reduce(sim, t, [](std::uint64_t a, std::uint64_t b) { return a + b; }) == 6);
    CHECK(sim.round() - before <= t.depth + 1);
    std::vector<std::uint64_t> many(20, 1);
    AggTree wide = build_aggregation_tree(sim, {many});
    auto got = agg_broadcast(sim, wide, 7);
    CHECK(got.size() == 5);
    CHECK(std::all_of(got.begin(), got.end(), [](std::uint64_t v) { return v == 7; }));
  }
  SUBCASE("too many elements") {
    std::vector<std::uint64_t> huge(c.global_cap() + 1, 1);
    CHECK(code_of([&] { build_aggregation_tree(sim, {huge}); }) == ErrorCode::kMemoryExceeded);
  }
}

TEST_CASE("reduce over a set split across two machines") {
  MachineConfig c = MachineConfig::derive(16, 15, 0.5, 0.5);
  REQUIRE(c.local_words == 2);
  Simulator sim(c, unit_words(16));
  AggTree t = build_aggregation_tree(sim, {{4, 9}, {2}});
  CHECK(t.leaf_assignment.size() == 2);
  CHECK(agg_reduce(sim, t, [](std::uint64_t a, std::uint64_t b) { return std::max(a, b); }) == 9);
}

TEST_CASE("identical runs give identical ledgers") {
  auto run = [] {
    MachineConfig c = MachineConfig::derive(50, 49);
    Simulator sim(c, unit_words(50));
    for (std::uint32_t r = 0; r < 30; ++r) {
      sim.set_stored(r % 50, r * 3);
      sim.send(r % 50, (r * 7) % 50, r);
      sim.end_round();
    }
    return std::make_tuple(sim.round(), sim.ledger().peak_local, sim.ledger().peak_global,
                           sim.stats().messages_total);
  };
  CHECK(run() == run());
}
