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
#include <stdexcept>
#include <string>

namespace fmpc {

// Stable numeric values; the C API exposes the same numbers.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidSpec = 1,
  kInvalidInput = 2,
  kNotAForest = 3,
  kNotATree = 4,
  kUnknownNode = 5,
  kMemoryExceeded = 6,
  kRoutingError = 7,
  kPhaseFailure = 8,
  kCorruptLog = 9,
  kCorruptState = 10,
  kIncomplete = 11,
  kIo = 12,
  kConfig = 13,
  kInternal = 14,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class MemoryExceeded : public Error {
 public:
  MemoryExceeded(std::uint64_t round, std::uint64_t machine, const std::string& kind,
                 std::uint64_t used, std::uint64_t cap);
  std::uint64_t round() const { return round_; }
  std::uint64_t machine() const { return machine_; }

 private:
  std::uint64_t round_;
  std::uint64_t machine_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace fmpc
