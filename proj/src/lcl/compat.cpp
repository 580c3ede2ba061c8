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

#include "lcl/compat.hpp"

#include <map>

#include "common/error.hpp"

namespace fmpc::lcl {

namespace {

std::shared_ptr<const TupleSet> node_tuples(const LclProblem& p, const std::vector<Label>& in) {
  const std::size_t d = in.size();
  const std::size_t k = p.outputs.size();
  double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= static_cast<double>(k);
  if (count > 2e7) fail(ErrorCode::kInvalidInput, "too many output tuples for a node of degree " + std::to_string(d));
  auto out = std::make_shared<TupleSet>();
  Tuple t(d, 0);
  Multiset m(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) m[i] = {in[i], t[i]};
    if (p.node_allowed(m)) out->push_back(t);
    std::size_t i = d;
    while (i > 0 && t[i - 1] + 1u == k) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

}  // namespace

CompatibilityTree init_compatibility(const forest::Forest& f, const LclProblem& p) {
  CompatibilityTree ct;
  const Index n = static_cast<Index>(f.size());
  ct.origdeg.resize(n);
  ct.phi.resize(n);
  ct.port_edge.resize(n);
  std::map<std::vector<Label>, std::shared_ptr<const TupleSet>> cache;
  for (Index v = 0; v < n; ++v) {
    const Port d = f.degree(v);
    if (d > p.delta_max) {
      fail(ErrorCode::kInvalidInput, "node " + std::to_string(f.id(v)) + " has degree " +
                                         std::to_string(d) + " above delta_max");
    }
    ct.origdeg[v] = d;
    ct.port_edge[v].assign(d, kNoEdge);
    std::vector<Label> in(d);
    for (Port q = 1; q <= d; ++q) in[q - 1] = p.input_index(f.has_inputs() ? f.input(v, q) : "");
    auto it = cache.find(in);
    if (it == cache.end()) it = cache.emplace(in, node_tuples(p, in)).first;
    ct.phi[v] = it->second;
  }
  for (auto [x, y] : f.edges()) {
    Index a = f.id(x) < f.id(y) ? x : y, b = a == x ? y : x;
    LEdge e;
    e.a = a;
    e.b = b;
    e.pa = f.port_to(a, b);
    e.pb = f.port_to(b, a);
    Label ia = p.input_index(f.has_inputs() ? f.input(a, e.pa) : "");
    Label ib = p.input_index(f.has_inputs() ? f.input(b, e.pb) : "");
    for (Label l1 = 0; l1 < p.outputs.size(); ++l1) {
      for (Label l2 = 0; l2 < p.outputs.size(); ++l2) {
        if (p.edge_allowed({ia, l1}, {ib, l2})) e.psi.emplace_back(l1, l2);
      }
    }
    ct.port_edge[a][e.pa - 1] = static_cast<std::uint32_t>(ct.edges.size());
    ct.port_edge[b][e.pb - 1] = static_cast<std::uint32_t>(ct.edges.size());
    ct.edges.push_back(std::move(e));
  }
  return ct;
}

}  // namespace fmpc::lcl
