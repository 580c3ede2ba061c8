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

#include "common/error.hpp"

namespace fmpc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNotAForest: return "NotAForest";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kMemoryExceeded: return "MemoryExceeded";
    case ErrorCode::kRoutingError: return "RoutingError";
    case ErrorCode::kPhaseFailure: return "PhaseFailure";
    case ErrorCode::kCorruptLog: return "CorruptLog";
    case ErrorCode::kCorruptState: return "CorruptState";
    case ErrorCode::kIncomplete: return "Incomplete";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

MemoryExceeded::MemoryExceeded(std::uint64_t round, std::uint64_t machine, const std::string& kind,
                               std::uint64_t used, std::uint64_t cap)
    : Error(ErrorCode::kMemoryExceeded,
            kind + " cap exceeded on machine " + std::to_string(machine) + " in round " +
                std::to_string(round) + ": " + std::to_string(used) + " > " + std::to_string(cap)),
      round_(round),
      machine_(machine) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fmpc
