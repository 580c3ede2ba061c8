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

#include "mpc/simulator.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "json.hpp"

namespace fmpc::mpc {

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kLocal: return "local";
    case ViolationKind::kGlobal: return "global";
    case ViolationKind::kSend: return "send";
    case ViolationKind::kReceive: return "receive";
  }
  return "unknown";
}

Simulator::Simulator(const MachineConfig& config, const std::vector<std::uint64_t>& input_words)
    : config_(config) {
  config_.validate();
  const std::uint64_t machines = config_.machine_count;
  std::uint64_t total = 0;
  for (auto w : input_words) total += w;
  const std::uint64_t block = std::max<std::uint64_t>(1, (total + machines - 1) / machines);
  first_machine_.resize(input_words.size());
  span_.resize(input_words.size());
  std::uint64_t offset = 0;
  for (std::size_t v = 0; v < input_words.size(); ++v) {
    std::uint64_t w = std::max<std::uint64_t>(1, input_words[v]);
    std::uint64_t first = std::min(offset / block, machines - 1);
    std::uint64_t last = std::min((offset + w - 1) / block, machines - 1);
    first_machine_[v] = first;
    span_[v] = static_cast<std::uint32_t>(last - first + 1);
    offset += input_words[v];
  }
  stored_.assign(input_words.size(), 0);
  ledger_.per_machine_used.assign(machines, 0);
  ledger_.message_words_this_round.assign(machines, 0);
  received_.assign(machines, 0);
  sent_.assign(machines, 0);
  is_touched_.assign(machines, 0);
  for (std::size_t v = 0; v < input_words.size(); ++v) {
    set_stored(static_cast<std::uint32_t>(v), input_words[v]);
  }
}

void Simulator::touch(std::uint64_t machine) {
  if (!is_touched_[machine]) {
    is_touched_[machine] = 1;
    touched_.push_back(machine);
  }
}

void Simulator::charge_machines(std::uint32_t v, std::uint64_t words,
                                std::vector<std::uint64_t>& target, bool track) {
  const std::uint64_t first = first_machine_[v];
  const std::uint32_t span = span_[v];
  const std::uint64_t share = words / span;
  const std::uint64_t rest = words % span;
  for (std::uint32_t i = 0; i < span; ++i) {
    target[first + i] += share + (i == 0 ? rest : 0);
    if (track) touch(first + i);
  }
}

void Simulator::set_stored(std::uint32_t v, std::uint64_t words) {
  const std::uint64_t old = stored_[v];
  if (old == words) return;
  const std::uint64_t first = first_machine_[v];
  const std::uint32_t span = span_[v];
  for (std::uint32_t i = 0; i < span; ++i) {
    std::uint64_t o = old / span + (i == 0 ? old % span : 0);
    std::uint64_t w = words / span + (i == 0 ? words % span : 0);
    ledger_.per_machine_used[first + i] += w;
    ledger_.per_machine_used[first + i] -= o;
    touch(first + i);
  }
  ledger_.global_used += words;
  ledger_.global_used -= old;
  stored_[v] = words;
}

void Simulator::send(std::uint32_t from, std::uint32_t to, std::uint64_t words) {
  words += kHeaderWords;
  charge_machines(from, words, sent_, true);
  charge_machines(to, words, received_, true);
  transient_total_ += words;
  stats_.messages_total += words;
}

void Simulator::charge_outgoing(std::uint32_t v, std::uint64_t words, std::uint64_t messages) {
  words += messages * kHeaderWords;
  if (words == 0) return;
  charge_machines(v, words, sent_, true);
  stats_.messages_total += words;
}

void Simulator::charge_incoming(std::uint32_t v, std::uint64_t words, std::uint64_t messages) {
  words += messages * kHeaderWords;
  if (words == 0) return;
  charge_machines(v, words, received_, true);
  transient_total_ += words;
}

void Simulator::send_to_machine(std::uint32_t from, std::uint64_t machine, std::uint64_t words) {
  words += kHeaderWords;
  charge_machines(from, words, sent_, true);
  received_[machine] += words;
  touch(machine);
  transient_total_ += words;
  stats_.messages_total += words;
}

void Simulator::record(ViolationKind kind, std::uint64_t machine, std::uint64_t used,
                       std::uint64_t cap) {
  if (config_.strict_mode) {
    throw MemoryExceeded(stats_.rounds_elapsed, machine, violation_kind_name(kind), used, cap);
  }
  ++ledger_.violation_count;
  if (ledger_.violations.size() < kMaxViolations) {
    ledger_.violations.push_back({stats_.rounds_elapsed, machine, kind, used, cap});
  }
}

void Simulator::end_round() {
  const std::uint64_t cap = config_.local_words;
  const std::uint64_t bw = config_.bandwidth_words;
  std::sort(touched_.begin(), touched_.end());
  for (std::uint64_t m : touched_) {
    ledger_.message_words_this_round[m] = sent_[m];
    const std::uint64_t local = ledger_.per_machine_used[m] + received_[m];
    ledger_.peak_local = std::max(ledger_.peak_local, local);
    if (sent_[m] > bw) record(ViolationKind::kSend, m, sent_[m], bw);
    if (received_[m] > bw) record(ViolationKind::kReceive, m, received_[m], bw);
    if (local > cap) record(ViolationKind::kLocal, m, local, cap);
  }
  const std::uint64_t global = ledger_.global_used + transient_total_;
  ledger_.peak_global = std::max(ledger_.peak_global, global);
  if (global > config_.global_cap()) record(ViolationKind::kGlobal, 0, global, config_.global_cap());
  for (std::uint64_t m : touched_) {
    sent_[m] = 0;
    received_[m] = 0;
    ledger_.message_words_this_round[m] = 0;
    is_touched_[m] = 0;
  }
  touched_.clear();
  transient_total_ = 0;
  ++stats_.rounds_elapsed;
}

void Simulator::idle_rounds(std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) end_round();
}

void Simulator::mark_phase(const std::string& label) {
  stats_.phase_markers.push_back({label, stats_.rounds_elapsed});
}

void Simulator::absorb_parallel(const std::vector<const Simulator*>& parts) {
  std::uint64_t rounds = 0, peak_global = 0;
  for (const Simulator* p : parts) {
    rounds = std::max(rounds, p->stats_.rounds_elapsed);
    peak_global += p->ledger_.peak_global;
    ledger_.peak_local = std::max(ledger_.peak_local, p->ledger_.peak_local);
    stats_.messages_total += p->stats_.messages_total;
    ledger_.violation_count += p->ledger_.violation_count;
    for (const Violation& v : p->ledger_.violations) {
      if (ledger_.violations.size() >= kMaxViolations) break;
      Violation shifted = v;
      shifted.round += stats_.rounds_elapsed;
      ledger_.violations.push_back(shifted);
    }
    checks_.merge(p->checks_);
  }
  ledger_.peak_global = std::max(ledger_.peak_global, ledger_.global_used + peak_global);
  stats_.rounds_elapsed += rounds;
}

std::uint32_t Simulator::agg_depth(std::uint64_t elements) const {
  std::uint64_t width = std::max<std::uint64_t>(
      1, (elements + config_.local_words - 1) / config_.local_words);
  const std::uint64_t fanout = config_.fanout();
  std::uint32_t depth = 0;
  while (width > 1) {
    width = (width + fanout - 1) / fanout;
    ++depth;
  }
  return depth;
}

void Simulator::aggregate(std::uint64_t elements, std::uint64_t words) {
  words += kHeaderWords;
  const std::uint64_t fanout = config_.fanout();
  std::uint64_t width = std::max<std::uint64_t>(
      1, (elements + config_.local_words - 1) / config_.local_words);
  width = std::min(width, config_.machine_count);
  // Leaf machines exchange with their inner parent, level by level; one more
  // round moves the value between the elements' hosts and the leaves.
  end_round();
  while (width > 1) {
    std::uint64_t parents = (width + fanout - 1) / fanout;
    for (std::uint64_t p = 0; p < parents; ++p) {
      std::uint64_t children = std::min(fanout, width - p * fanout);
      std::uint64_t machine = p * fanout;
      received_[machine] += children * words;
      touch(machine);
      transient_total_ += children * words;
      stats_.messages_total += children * words;
      for (std::uint64_t c = 0; c < children; ++c) {
        sent_[machine + c] += words;
        touch(machine + c);
      }
    }
    end_round();
    width = parents;
  }
}

std::string Simulator::stats_json() const {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& p : stats_.phase_markers) phases.push_back({{"label", p.label}, {"round", p.round}});
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : ledger_.violations) {
    violations.push_back({{"round", v.round},
                          {"machine", v.machine},
                          {"kind", violation_kind_name(v.kind)},
                          {"used", v.used},
                          {"cap", v.cap}});
  }
  nlohmann::json j = {{"rounds", stats_.rounds_elapsed},
                      {"phases", phases},
                      {"peak_local_words", ledger_.peak_local},
                      {"peak_global_words", ledger_.peak_global},
                      {"messages_total", stats_.messages_total},
                      {"violation_count", ledger_.violation_count},
                      {"violations", violations}};
  return j.dump();
}

}  // namespace fmpc::mpc
