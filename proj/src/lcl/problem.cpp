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

#include "lcl/problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "json.hpp"

namespace fmpc::lcl {

namespace {

using nlohmann::json;

Label index_in(const std::vector<std::string>& alphabet, const std::string& label, ErrorCode code,
               const char* what) {
  auto it = std::find(alphabet.begin(), alphabet.end(), label);
  if (it == alphabet.end()) fail(code, std::string("unknown ") + what + " label '" + label + "'");
  return static_cast<Label>(it - alphabet.begin());
}

std::string label_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  fail(ErrorCode::kInvalidSpec, "labels must be strings or integers");
}

Multiset read_multiset(const LclProblem& p, const json& j) {
  if (!j.is_array()) fail(ErrorCode::kInvalidSpec, "a constraint must be a list of pairs");
  Multiset m;
  for (const json& pr : j) {
    if (!pr.is_array() || pr.size() != 2) {
      fail(ErrorCode::kInvalidSpec, "a constraint entry must be an [input, output] pair");
    }
    m.emplace_back(index_in(p.inputs, label_text(pr[0]), ErrorCode::kInvalidSpec, "input"),
                   index_in(p.outputs, label_text(pr[1]), ErrorCode::kInvalidSpec, "output"));
  }
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

bool LclProblem::node_allowed(Multiset m) const {
  std::sort(m.begin(), m.end());
  return node_constraints.count(m) != 0;
}

bool LclProblem::edge_allowed(IoPair a, IoPair b) const {
  Multiset m{a, b};
  std::sort(m.begin(), m.end());
  return edge_constraints.count(m) != 0;
}

Label LclProblem::input_index(const std::string& label) const {
  if (label.empty()) return 0;
  return index_in(inputs, label, ErrorCode::kInvalidInput, "input");
}

Label LclProblem::output_index(const std::string& label) const {
  return index_in(outputs, label, ErrorCode::kInvalidInput, "output");
}

LclProblem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidSpec, std::string("problem is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kInvalidSpec, "problem must be a JSON object");
  LclProblem p;
  p.name = j.value("name", std::string("unnamed"));
  for (const char* key : {"inputs", "outputs", "node_constraints", "edge_constraints", "delta_max"}) {
    if (!j.contains(key)) fail(ErrorCode::kInvalidSpec, std::string("problem lacks '") + key + "'");
  }
  for (const json& l : j["inputs"]) p.inputs.push_back(label_text(l));
  for (const json& l : j["outputs"]) p.outputs.push_back(label_text(l));
  if (p.inputs.empty()) p.inputs.push_back("_");
  if (p.outputs.empty()) fail(ErrorCode::kInvalidSpec, "output alphabet is empty");
  if (p.outputs.size() > kMaxOutputs || p.inputs.size() > 255) {
    fail(ErrorCode::kInvalidSpec, "alphabet too large");
  }
  for (const auto* alpha : {&p.inputs, &p.outputs}) {
    std::vector<std::string> s = *alpha;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      fail(ErrorCode::kInvalidSpec, "duplicate label in an alphabet");
    }
  }
  if (!j["delta_max"].is_number_unsigned()) fail(ErrorCode::kInvalidSpec, "delta_max must be a count");
  p.delta_max = j["delta_max"].get<std::uint32_t>();
  for (const json& c : j["node_constraints"]) {
    Multiset m = read_multiset(p, c);
    if (m.size() > p.delta_max) fail(ErrorCode::kInvalidSpec, "node constraint larger than delta_max");
    p.node_constraints.insert(std::move(m));
  }
  for (const json& c : j["edge_constraints"]) {
    Multiset m = read_multiset(p, c);
    if (m.size() != 2) fail(ErrorCode::kInvalidSpec, "edge constraints must have size 2");
    p.edge_constraints.insert(std::move(m));
  }
  return p;
}

LclProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open problem file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string problem_to_json(const LclProblem& p) {
  json j;
  j["name"] = p.name;
  j["inputs"] = p.inputs;
  j["outputs"] = p.outputs;
  j["delta_max"] = p.delta_max;
  auto dump = [&](const std::set<Multiset>& sets) {
    json arr = json::array();
    for (const Multiset& m : sets) {
      json c = json::array();
      for (auto [i, o] : m) c.push_back({p.inputs[i], p.outputs[o]});
      arr.push_back(c);
    }
    return arr;
  };
  j["node_constraints"] = dump(p.node_constraints);
  j["edge_constraints"] = dump(p.edge_constraints);
  return j.dump();
}

}  // namespace fmpc::lcl
