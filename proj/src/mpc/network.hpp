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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::mpc {

struct RoundDelta {
  std::uint64_t rounds = 0;
  std::uint64_t message_words = 0;
};

// Message-passing view over a Simulator. Nodes are addressed by ID; a step
// reads its previous state and the messages delivered at the last barrier and
// returns its next state. Messages sent in a round arrive at the next one.
template <class State, class Msg>
class Network {
 public:
  struct Envelope {
    std::uint64_t from;
    Msg msg;
  };

  class Outbox {
   public:
    void send(std::uint64_t to, Msg msg) { out_.emplace_back(to, std::move(msg)); }

   private:
    friend class Network;
    std::vector<std::pair<std::uint64_t, Msg>> out_;
  };

  using WordsFn = std::function<std::uint64_t(const Msg&)>;
  using Step = std::function<State(std::uint64_t self, const State& prev,
                                   std::span<const Envelope> inbox, Outbox& out)>;

  // `ids` must be sorted ascending and match the simulator's node order.
  Network(Simulator& sim, std::vector<std::uint64_t> ids, std::vector<State> init, WordsFn words)
      : sim_(sim), ids_(std::move(ids)), state_(std::move(init)), inbox_(ids_.size()),
        words_(std::move(words)) {}

  RoundDelta run_round(const Step& step) {
    const std::uint64_t before = sim_.stats().messages_total;
    std::vector<State> next;
    next.reserve(state_.size());
    std::vector<std::vector<Envelope>> delivered(ids_.size());
    for (std::size_t v = 0; v < ids_.size(); ++v) {
      Outbox out;
      next.push_back(step(ids_[v], state_[v], inbox_[v], out));
      for (auto& [to, msg] : out.out_) {
        std::size_t t = index_of(to);
        sim_.send(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(t), words_(msg));
        delivered[t].push_back({ids_[v], std::move(msg)});
      }
    }
    sim_.end_round();
    state_ = std::move(next);
    inbox_ = std::move(delivered);
    return {1, sim_.stats().messages_total - before};
  }

  const State& state(std::uint64_t id) const { return state_[index_of(id)]; }
  std::span<const Envelope> inbox(std::uint64_t id) const { return inbox_[index_of(id)]; }

 private:
  std::size_t index_of(std::uint64_t id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
      fail(ErrorCode::kRoutingError, "message addressed to unknown node " + std::to_string(id));
    }
    return static_cast<std::size_t>(it - ids_.begin());
  }

  Simulator& sim_;
  std::vector<std::uint64_t> ids_;
  std::vector<State> state_;
  std::vector<std::vector<Envelope>> inbox_;
  WordsFn words_;
};

}  // namespace fmpc::mpc
