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

#include "maxid/knowledge.hpp"

#include <algorithm>
#include <iterator>

namespace fmpc::maxid {

Knowledge::Knowledge(const PhaseGraph& pg) : pg_(pg) {
  const LocalIndex n = pg.size();
  off_.assign(n + 1, 0);
  for (LocalIndex v = 0; v < n; ++v) off_[v + 1] = off_[v] + pg.degree(v);
  sets_.resize(off_[n]);
  total_.assign(n, 0);
  base_.assign(n, kStateWords);
  for (LocalIndex v = 0; v < n; ++v) {
    for (Port p = 1; p <= pg.degree(v); ++p) sets_[off_[v] + p - 1] = {pg.neighbor(v, p)};
    total_[v] = pg.degree(v);
  }
}

bool Knowledge::contains(LocalIndex v, LocalIndex w) const {
  if (v == w) return false;
  const auto& s = toward(v, pg_.direction(v, w));
  return std::binary_search(s.begin(), s.end(), w);
}

std::vector<LocalIndex> Knowledge::all(LocalIndex v) const {
  std::vector<LocalIndex> out;
  out.reserve(total_[v]);
  for (Port p = 1; p <= pg_.degree(v); ++p) {
    const auto& s = toward(v, p);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<std::uint64_t> Knowledge::probe_counts(LocalIndex v) const {
  std::vector<std::uint64_t> b(pg_.degree(v), 0);
  for (Port p = 1; p <= pg_.degree(v); ++p) {
    for (LocalIndex w : toward(v, p)) b[p - 1] += away(w, pg_.direction(w, v));
  }
  return b;
}

std::uint64_t Knowledge::exp(const std::vector<ExpRequest>& requests, mpc::Simulator* sim,
                             CheckLog* tag_checks) {
  if (sim != nullptr) {
    for (const auto& r : requests) {
      for (Port p : r.ports) {
        for (LocalIndex w : toward(r.v, p)) sim->send(pg_.global(r.v), pg_.global(w), 1);
      }
    }
    sim->end_round();
  }
  struct Update {
    LocalIndex v;
    Port p;
    std::vector<LocalIndex> merged;
  };
  std::vector<Update> updates;
  std::vector<LocalIndex> gathered;
  for (const auto& r : requests) {
    for (Port p : r.ports) {
      gathered.clear();
      for (LocalIndex w : toward(r.v, p)) {
        Port x = pg_.direction(w, r.v);
        std::uint64_t words = 0;
        for (Port q = 1; q <= pg_.degree(w); ++q) {
          if (q == x) continue;
          const auto& s = toward(w, q);
          gathered.insert(gathered.end(), s.begin(), s.end());
          words += s.size();
        }
        if (sim != nullptr) sim->send(pg_.global(w), pg_.global(r.v), words);
      }
      std::sort(gathered.begin(), gathered.end());
      gathered.erase(std::unique(gathered.begin(), gathered.end()), gathered.end());
      const auto& cur = toward(r.v, p);
      std::vector<LocalIndex> merged;
      merged.reserve(cur.size() + gathered.size());
      std::set_union(cur.begin(), cur.end(), gathered.begin(), gathered.end(),
                     std::back_inserter(merged));
      if (merged.size() == cur.size()) continue;
      if (tag_checks != nullptr) {
        for (LocalIndex y : gathered) {
          tag_checks->require(y != r.v && pg_.direction(r.v, y) == p, "direction-tag",
                              "node " + std::to_string(pg_.global(y)) + " filed under wrong port");
        }
      }
      updates.push_back({r.v, p, std::move(merged)});
    }
  }
  if (sim != nullptr) sim->end_round();
  std::uint64_t grown = 0;
  LocalIndex last = kNone;
  for (auto& u : updates) {
    replace(u.v, u.p, std::move(u.merged));
    if (u.v != last) ++grown;
    last = u.v;
  }
  if (sim != nullptr) {
    for (const auto& u : updates) charge(u.v, *sim);
  }
  return grown;
}

bool Knowledge::add(LocalIndex v, LocalIndex w) {
  Port p = pg_.direction(v, w);
  auto& s = sets_[off_[v] + p - 1];
  auto it = std::lower_bound(s.begin(), s.end(), w);
  if (it != s.end() && *it == w) return false;
  s.insert(it, w);
  ++total_[v];
  return true;
}

void Knowledge::replace(LocalIndex v, Port p, std::vector<LocalIndex> sorted) {
  auto& s = sets_[off_[v] + p - 1];
  total_[v] += sorted.size();
  total_[v] -= s.size();
  s = std::move(sorted);
}

void Knowledge::charge(LocalIndex v, mpc::Simulator& sim) const {
  sim.set_stored(pg_.global(v), base_[v] + total_[v]);
}

ProbeResult probe_directions(Knowledge& k, LocalIndex v, std::uint64_t dhat, std::uint64_t light,
                             mpc::Simulator* sim) {
  const PhaseGraph& pg = k.graph();
  ProbeResult r;
  r.counts = k.probe_counts(v);
  if (sim != nullptr) {
    for (Port p = 1; p <= pg.degree(v); ++p) {
      for (LocalIndex w : k.toward(v, p)) sim->send(pg.global(v), pg.global(w), 1);
    }
    sim->end_round();
    for (Port p = 1; p <= pg.degree(v); ++p) {
      for (LocalIndex w : k.toward(v, p)) sim->send(pg.global(w), pg.global(v), 1);
    }
    sim->end_round();
  }
  if (pg.degree(v) == 0) return r;
  for (Port p = 1; p <= pg.degree(v); ++p) {
    if (r.counts[p - 1] >= light * dhat) r.full_dirs.push_back(p);
  }
  if (!r.full_dirs.empty()) return r;
  Port best = 1;
  for (Port p = 2; p <= pg.degree(v); ++p) {
    if (r.counts[p - 1] > r.counts[best - 1]) best = p;
  }
  bool dominant = true;
  for (Port p = 1; p <= pg.degree(v); ++p) {
    if (p != best && r.counts[best - 1] < dhat * r.counts[p - 1]) dominant = false;
  }
  if (dominant) {
    r.largest = best;
    return r;
  }
  std::vector<Port> all(pg.degree(v));
  for (Port p = 1; p <= pg.degree(v); ++p) all[p - 1] = p;
  k.exp({{v, all}}, sim);
  r.exponentiated = true;
  best = 1;
  for (Port p = 2; p <= pg.degree(v); ++p) {
    if (k.toward(v, p).size() > k.toward(v, best).size()) best = p;
  }
  r.largest = best;
  return r;
}

}  // namespace fmpc::maxid
