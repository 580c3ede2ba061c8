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
#include <map>
#include <string>
#include <vector>

namespace fmpc {

// Runtime invariant checks are recorded instead of aborting so that a run can
// report every violated invariant at once.
class CheckLog {
 public:
  void fail(const std::string& kind, const std::string& detail);
  void require(bool ok, const std::string& kind, const std::string& detail) {
    if (!ok) fail(kind, detail);
  }
  std::uint64_t total() const { return total_; }
  const std::map<std::string, std::uint64_t>& by_kind() const { return by_kind_; }
  const std::vector<std::string>& samples() const { return samples_; }
  void merge(const CheckLog& other);

 private:
  std::uint64_t total_ = 0;
  std::map<std::string, std::uint64_t> by_kind_;
  std::vector<std::string> samples_;
};

}  // namespace fmpc
