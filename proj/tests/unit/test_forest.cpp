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

#include <sstream>

#include "common/error.hpp"
#include "doctest.h"
#include "forest/forest.hpp"
#include "forest/generators.hpp"
#include "forest/io.hpp"
#include "forest/oracles.hpp"
#include "helpers.hpp"

using namespace fmpc;
using namespace fmpc::forest;

using testing::code_of;
using testing::path_forest;

TEST_CASE("ports follow edge order and adjacency is symmetric") {
  Forest f = Forest::build({}, {{10, 1}, {10, 2}, {3, 10}});
  Index c = f.index_of(10);
  CHECK(f.degree(c) == 3);
  CHECK(f.id(f.neighbor(c, 1)) == 1);
  CHECK(f.id(f.neighbor(c, 2)) == 2);
  CHECK(f.id(f.neighbor(c, 3)) == 3);
  for (Index v = 0; v < f.size(); ++v) {
    for (Index u : f.neighbors(v)) CHECK(f.port_to(u, v) != 0);
  }
}

TEST_CASE("cycles, self-loops and duplicate edges are rejected") {
  CHECK(code_of([] { Forest::build({}, {{1, 2}, {2, 3}, {3, 1}}); }) == ErrorCode::kNotAForest);
  CHECK(code_of([] { Forest::build({}, {{1, 1}}); }) == ErrorCode::kNotAForest);
  CHECK(code_of([] { Forest::build({}, {{1, 2}, {2, 1}}); }) == ErrorCode::kNotAForest);
}

TEST_CASE("text round trip keeps isolated nodes, inputs and st table") {
  std::istringstream in("4 2\n1 2\n2 3\n# nodes\n9\n# inputs\n1 2 a\n2 1 b\n# st\n1 9\n");
  Instance inst = read_text(in);
  CHECK(inst.forest.size() == 4);
  CHECK(inst.forest.input(inst.forest.index_of(1), 1) == "a");
  REQUIRE(inst.st.has_value());
  CHECK(inst.st->second == 9);
  std::ostringstream out;
  write_text(out, inst);
  std::istringstream again(out.str());
  Instance back = read_text(again);
  CHECK(back.forest.ids() == inst.forest.ids());
  CHECK(back.forest.edges() == inst.forest.edges());
  CHECK(back.forest.input_list().size() == 2);
  Instance js = read_json(to_json(inst));
  CHECK(js.forest.ids() == inst.forest.ids());
  CHECK(js.st == inst.st);
}

TEST_CASE("malformed files are rejected") {
  std::istringstream bad_count("3 2\n1 2\n");
  CHECK(code_of([&] { read_text(bad_count); }) == ErrorCode::kInvalidInput);
  std::istringstream bad_n("5 1\n1 2\n");
  CHECK(code_of([&] { read_text(bad_n); }) == ErrorCode::kInvalidInput);
  std::istringstream cyc("3 3\n1 2\n2 3\n3 1\n");
  CHECK(code_of([&] { read_text(cyc); }) == ErrorCode::kNotAForest);
}

TEST_CASE("generators") {
  SUBCASE("path length 4 has header 5 4") {
    Instance inst = generate(parse_spec("path", {"length=4"}, 0));
    std::ostringstream out;
    write_text(out, inst);
    CHECK(out.str().rfind("5 4\n", 0) == 0);
  }
  SUBCASE("random forest edge count") {
    Instance inst = generate(parse_spec("random_forest", {"n=100", "components=3"}, 1));
    CHECK(inst.forest.size() == 100);
    CHECK(inst.forest.num_edges() == 97);
  }
  SUBCASE("random forest without nodes is invalid") {
    CHECK(code_of([] { generate(parse_spec("random_forest", {"n=0"}, 1)); }) ==
          ErrorCode::kInvalidSpec);
  }
  SUBCASE("balanced tree of degree 1 is invalid") {
    CHECK(code_of([] { generate(parse_spec("balanced_tree", {"degree=1", "depth=3"}, 1)); }) ==
          ErrorCode::kInvalidSpec);
  }
  SUBCASE("diameter-targeted kinds stay within [D, 2D]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Instance a = generate(parse_spec("random_forest", {"n=500", "components=4", "diameter=12"}, seed));
      for (auto d : diameter(a.forest).per_component) {
        CHECK(d >= 12);
        CHECK(d <= 24);
      }
      Instance b = generate(parse_spec("st_path_family", {"diameter=7", "components=8"}, seed));
      CHECK(diameter(b.forest).per_component.size() == 8);
      for (auto d : diameter(b.forest).per_component) {
        CHECK(d >= 7);
        CHECK(d <= 14);
      }
      REQUIRE(b.st.has_value());
    }
    Instance c = generate(parse_spec("caterpillar", {"n=1000", "diameter=32"}, 0));
    CHECK(diameter(c.forest).max == 32);
    CHECK(c.forest.size() == 1000);
  }
  SUBCASE("same seed gives the same forest") {
    auto spec = parse_spec("random_forest", {"n=300", "components=5"}, 42);
    CHECK(generate(spec).forest.edges() == generate(spec).forest.edges());
  }
  SUBCASE("sparse ids") {
    Instance inst = generate(parse_spec("path", {"length=9", "sparse=1"}, 3));
    CHECK(inst.forest.size() == 10);
    CHECK(inst.forest.id(9) > 1000);
  }
}

TEST_CASE("oracle components") {
  Forest f = Forest::build({}, {{1, 2}, {2, 3}, {7, 9}});
  auto comp = oracle_components(f);
  CHECK(comp == std::map<NodeId, NodeId>{{1, 3}, {2, 3}, {3, 3}, {7, 9}, {9, 9}});
  auto bfs = bfs_component_max(f);
  for (Index v = 0; v < f.size(); ++v) CHECK(bfs[v] == comp[f.id(v)]);
}

TEST_CASE("oracle subtree sizes") {
  SubtreeSizes p3 = oracle_subtree_sizes(path_forest(3), 1);
  CHECK(p3.size == std::map<NodeId, std::uint64_t>{{1, 3}, {2, 2}, {3, 1}});
  CHECK(p3.sum == 6);
  CHECK(p3.bound == 9);
  Forest star = Forest::build({}, {{1, 2}, {1, 3}, {1, 4}});
  SubtreeSizes s = oracle_subtree_sizes(star, 1);
  CHECK(s.sum == 7);
  CHECK(s.bound == 8);
  CHECK(s.sum <= 12);
  CHECK(code_of([&] { oracle_subtree_sizes(star, 99); }) == ErrorCode::kUnknownNode);
}

TEST_CASE("light and heavy classification") {
  LightHeavy lh = classify_light_heavy(path_forest(5), 2);
  CHECK(lh.heavy == std::vector<bool>{false, false, true, false, false});
  CHECK(lh.light_ports[1] == std::vector<Port>{2});
  CHECK(lh.heavy_connected);
  CHECK(lh.unique_light_direction);
  CHECK(lh.light_side_all_light);
}

TEST_CASE("diameters") {
  CHECK(diameter(path_forest(5)).max == 4);
  CHECK(diameter(Forest::build({}, {{1, 2}, {1, 3}, {1, 4}})).max == 2);
  std::vector<std::pair<NodeId, NodeId>> edges{{1, 2}, {2, 3}};
  for (NodeId i = 10; i < 18; ++i) edges.emplace_back(i, i + 1);
  CHECK(diameter(Forest::build({}, edges)).per_component == std::vector<std::uint64_t>{2, 8});
}

TEST_CASE("side sizes partition every component") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = generate(parse_spec("random_forest", {"n=60", "components=3"}, seed));
    const Forest& f = inst.forest;
    SideSizes sides(f);
    for (Index v = 0; v < f.size(); ++v) {
      for (Port p = 1; p <= f.degree(v); ++p) {
        Index u = f.neighbor(v, p);
        CHECK(sides.away_from(v, p) + sides.away_from(u, f.port_to(u, v)) == sides.component_size(v));
      }
    }
  }
}
