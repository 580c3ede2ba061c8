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

#pragma once

#include <cstdint>
#include <vector>

#include "common/checks.hpp"
#include "maxid/phase_graph.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::maxid {

// Knowledge sets S_v for every node of a phase graph, stored per direction:
// toward(v, p) = S_{v -> u} for the neighbour u behind port p. v itself is
// never a member of S_v. Sets only grow.
class Knowledge {
 public:
  // Words a node stores beyond its knowledge set (adjacency, state).
  static constexpr std::uint64_t kStateWords = 4;

  explicit Knowledge(const PhaseGraph& pg);

  const PhaseGraph& graph() const { return pg_; }
  const std::vector<LocalIndex>& toward(LocalIndex v, Port p) const { return sets_[off_[v] + p - 1]; }
  std::uint64_t size(LocalIndex v) const { return total_[v]; }
  // |S_{w -/-> x}|
  std::uint64_t away(LocalIndex w, Port x) const { return total_[w] - toward(w, x).size(); }
  bool contains(LocalIndex v, LocalIndex w) const;
  std::vector<LocalIndex> all(LocalIndex v) const;

  // B_{v -> u} for every port of v.
  std::vector<std::uint64_t> probe_counts(LocalIndex v) const;

  struct ExpRequest {
    LocalIndex v;
    std::vector<Port> ports;
  };
  // Executes all requests in lockstep: every response is read from the sets
  // as they were before the call. With a simulator, charges the query round
  // and the response round. Returns the number of nodes whose set grew.
  std::uint64_t exp(const std::vector<ExpRequest>& requests, mpc::Simulator* sim,
                    CheckLog* tag_checks = nullptr);

  // Adds w under direction(v, w). Returns false when already known.
  bool add(LocalIndex v, LocalIndex w);
  // Replaces S_{v -> p} by a sorted superset.
  void replace(LocalIndex v, Port p, std::vector<LocalIndex> sorted);

  // Extra per-node storage charged to the simulator besides |S_v|.
  void set_base_words(LocalIndex v, std::uint64_t words) { base_[v] = words; }
  void charge(LocalIndex v, mpc::Simulator& sim) const;

 private:
  const PhaseGraph& pg_;
  std::vector<std::size_t> off_;
  std::vector<std::vector<LocalIndex>> sets_;
  std::vector<std::uint64_t> total_;
  std::vector<std::uint64_t> base_;
};

// Standalone probe of a single node (Step 3(b) included): returns the full
// directions and the largest direction, or 0 when v has no neighbours.
struct ProbeResult {
  std::vector<Port> full_dirs;
  Port largest = 0;
  bool exponentiated = false;
  std::vector<std::uint64_t> counts;
};
ProbeResult probe_directions(Knowledge& k, LocalIndex v, std::uint64_t dhat, std::uint64_t light,
                             mpc::Simulator* sim);

}  // namespace fmpc::maxid
