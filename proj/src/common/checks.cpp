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

#include "common/checks.hpp"

namespace fmpc {

namespace {
constexpr std::size_t kMaxSamples = 32;
}

void CheckLog::fail(const std::string& kind, const std::string& detail) {
  ++total_;
  ++by_kind_[kind];
  if (samples_.size() < kMaxSamples) samples_.push_back(kind + ": " + detail);
}

void CheckLog::merge(const CheckLog& other) {
  total_ += other.total_;
  for (const auto& [k, v] : other.by_kind_) by_kind_[k] += v;
  for (const auto& s : other.samples_) {
    if (samples_.size() >= kMaxSamples) break;
    samples_.push_back(s);
  }
}

}  // namespace fmpc
