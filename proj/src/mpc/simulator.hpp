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
#include <string>
#include <vector>

#include "common/checks.hpp"
#include "mpc/config.hpp"

namespace fmpc::mpc {

enum class ViolationKind { kLocal, kGlobal, kSend, kReceive };
const char* violation_kind_name(ViolationKind kind);

struct Violation {
  std::uint64_t round = 0;
  std::uint64_t machine = 0;
  ViolationKind kind = ViolationKind::kLocal;
  std::uint64_t used = 0;
  std::uint64_t cap = 0;
};

struct MemoryLedger {
  std::vector<std::uint64_t> per_machine_used;
  std::uint64_t global_used = 0;
  std::uint64_t peak_local = 0;
  std::uint64_t peak_global = 0;
  std::vector<std::uint64_t> message_words_this_round;  // sent, per machine
  std::vector<Violation> violations;                    // first kMaxViolations only
  std::uint64_t violation_count = 0;
};

struct PhaseMarker {
  std::string label;
  std::uint64_t round = 0;
};

struct RoundStats {
  std::uint64_t rounds_elapsed = 0;
  std::vector<PhaseMarker> phase_markers;
  std::uint64_t messages_total = 0;
};

// Node-granular lockstep simulator. Node v (dense index) is hosted by the
// machines covering its interval in the input layout: nodes in index order,
// each taking 1 + deg words, cut into machine_count equal blocks. A node whose
// interval crosses a block boundary spreads its words evenly over its span.
class Simulator {
 public:
  static constexpr std::size_t kMaxViolations = 256;
  // Every message carries one addressing word on top of its payload.
  static constexpr std::uint64_t kHeaderWords = 1;

  Simulator(const MachineConfig& config, const std::vector<std::uint64_t>& input_words);

  const MachineConfig& config() const { return config_; }
  std::uint64_t round() const { return stats_.rounds_elapsed; }
  std::size_t nodes() const { return first_machine_.size(); }

  // Words currently stored by node v. Applied immediately.
  void set_stored(std::uint32_t v, std::uint64_t words);
  std::uint64_t stored(std::uint32_t v) const { return stored_[v]; }

  // Charges a message of `words` to the current round. Received words are
  // held as transient storage at the receiver until the round ends.
  void send(std::uint32_t from, std::uint32_t to, std::uint64_t words);
  // Bulk form of send for many messages between one node and many peers:
  // `messages` messages with `words` payload words in total.
  void charge_outgoing(std::uint32_t v, std::uint64_t words, std::uint64_t messages);
  void charge_incoming(std::uint32_t v, std::uint64_t words, std::uint64_t messages);
  // Charges traffic between a node and the machine layer (aggregation leaves).
  void send_to_machine(std::uint32_t from, std::uint64_t machine, std::uint64_t words);

  // Closes the round: checks caps, updates peaks, clears per-round counters.
  void end_round();
  void idle_rounds(std::uint64_t k);

  void mark_phase(const std::string& label);

  // Folds in independent runs that executed side by side on disjoint node
  // sets: rounds advance by the longest run, peaks add up, checks merge.
  void absorb_parallel(const std::vector<const Simulator*>& parts);

  // Depth of an aggregation tree over `elements` one-word elements.
  std::uint32_t agg_depth(std::uint64_t elements) const;
  // One reduce or one broadcast over an aggregation tree holding `elements`
  // elements, each message carrying `words` words. Costs depth + 1 rounds.
  void aggregate(std::uint64_t elements, std::uint64_t words);

  std::uint64_t machine_of(std::uint32_t v) const { return first_machine_[v]; }

  const MemoryLedger& ledger() const { return ledger_; }
  const RoundStats& stats() const { return stats_; }
  CheckLog& checks() { return checks_; }
  const CheckLog& checks() const { return checks_; }

  std::string stats_json() const;

 private:
  void charge_machines(std::uint32_t v, std::uint64_t words, std::vector<std::uint64_t>& target,
                       bool track);
  void touch(std::uint64_t machine);
  void record(ViolationKind kind, std::uint64_t machine, std::uint64_t used, std::uint64_t cap);

  MachineConfig config_;
  std::vector<std::uint64_t> first_machine_;
  std::vector<std::uint32_t> span_;
  std::vector<std::uint64_t> stored_;
  std::vector<std::uint64_t> received_;
  std::vector<std::uint64_t> sent_;
  std::vector<std::uint64_t> touched_;
  std::vector<char> is_touched_;
  std::uint64_t transient_total_ = 0;
  MemoryLedger ledger_;
  RoundStats stats_;
  CheckLog checks_;
};

}  // namespace fmpc::mpc
