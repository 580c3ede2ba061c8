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

#include "forest/io.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "common/error.hpp"
#include "json.hpp"

namespace fmpc::forest {

namespace {

using Json = nlohmann::json;

NodeId parse_id(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty() || tok[0] == '-') {
    fail(ErrorCode::kInvalidInput, "line " + std::to_string(line) + ": bad node id '" + tok + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Instance finish(std::uint64_t n, std::uint64_t m, std::vector<NodeId> nodes,
                const std::vector<std::pair<NodeId, NodeId>>& edges,
                const std::vector<HalfEdgeInput>& inputs,
                std::optional<std::pair<NodeId, NodeId>> st) {
  if (edges.size() != m) {
    fail(ErrorCode::kInvalidInput,
         "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  Instance inst;
  inst.forest = Forest::build(std::move(nodes), edges, inputs);
  if (inst.forest.size() != n) {
    fail(ErrorCode::kInvalidInput, "header declares " + std::to_string(n) + " nodes, found " +
                                       std::to_string(inst.forest.size()));
  }
  if (st) {
    inst.forest.index_of(st->first);
    inst.forest.index_of(st->second);
  }
  inst.st = st;
  return inst;
}

}  // namespace

Instance read_text(std::istream& in) {
  enum class Section { kEdges, kNodes, kInputs, kSt };
  Section section = Section::kEdges;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<HalfEdgeInput> inputs;
  std::optional<std::pair<NodeId, NodeId>> st;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string name = trim(t.substr(1));
      if (name == "nodes") section = Section::kNodes;
      else if (name == "inputs") section = Section::kInputs;
      else if (name == "st") section = Section::kSt;
      continue;
    }
    std::istringstream ls(t);
    std::vector<std::string> toks{std::istream_iterator<std::string>(ls), {}};
    if (!have_header) {
      if (toks.size() != 2) fail(ErrorCode::kInvalidInput, "line 1: expected 'n m'");
      n = parse_id(toks[0], lineno);
      m = parse_id(toks[1], lineno);
      have_header = true;
      continue;
    }
    switch (section) {
      case Section::kEdges:
        if (toks.size() != 2) {
          fail(ErrorCode::kInvalidInput, "line " + std::to_string(lineno) + ": expected 'u v'");
        }
        edges.emplace_back(parse_id(toks[0], lineno), parse_id(toks[1], lineno));
        break;
      case Section::kNodes:
        for (const auto& tok : toks) nodes.push_back(parse_id(tok, lineno));
        break;
      case Section::kInputs:
        if (toks.size() != 3) {
          fail(ErrorCode::kInvalidInput,
               "line " + std::to_string(lineno) + ": expected 'v u label'");
        }
        inputs.push_back({parse_id(toks[0], lineno), parse_id(toks[1], lineno), toks[2]});
        break;
      case Section::kSt:
        if (toks.size() != 2 || st) {
          fail(ErrorCode::kInvalidInput, "line " + std::to_string(lineno) + ": expected 's t'");
        }
        st.emplace(parse_id(toks[0], lineno), parse_id(toks[1], lineno));
        break;
    }
  }
  if (!have_header) fail(ErrorCode::kInvalidInput, "empty forest file");
  return finish(n, m, std::move(nodes), edges, inputs, st);
}

Instance read_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidInput, std::string("bad forest json: ") + e.what());
  }
  try {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    std::vector<NodeId> nodes;
    if (j.contains("nodes")) nodes = j["nodes"].get<std::vector<NodeId>>();
    std::vector<HalfEdgeInput> inputs;
    if (j.contains("inputs")) {
      for (const auto& e : j["inputs"]) {
        inputs.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<std::string>()});
      }
    }
    std::optional<std::pair<NodeId, NodeId>> st;
    if (j.contains("st")) st.emplace(j["st"].at(0).get<NodeId>(), j["st"].at(1).get<NodeId>());
    std::uint64_t m = j.value("m", static_cast<std::uint64_t>(edges.size()));
    if (!j.contains("n")) {
      Forest f = Forest::build(nodes, edges, inputs);
      return finish(f.size(), m, std::move(nodes), edges, inputs, st);
    }
    return finish(j.at("n").get<std::uint64_t>(), m, std::move(nodes), edges, inputs, st);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidInput, std::string("bad forest json: ") + e.what());
  }
}

Instance read_any(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), {}};
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_json(text);
  std::istringstream ss(text);
  return read_text(ss);
}

Instance read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return read_any(in);
}

void write_text(std::ostream& out, const Instance& inst) {
  const Forest& f = inst.forest;
  out << f.size() << ' ' << f.num_edges() << '\n';
  for (const auto& [a, b] : f.edges()) out << f.id(a) << ' ' << f.id(b) << '\n';
  bool header = false;
  for (Index v = 0; v < f.size(); ++v) {
    if (f.degree(v) != 0) continue;
    if (!header) out << "# nodes\n";
    header = true;
    out << f.id(v) << '\n';
  }
  if (f.has_inputs()) {
    out << "# inputs\n";
    for (const auto& in : f.input_list()) out << in.v << ' ' << in.u << ' ' << in.label << '\n';
  }
  if (inst.st) out << "# st\n" << inst.st->first << ' ' << inst.st->second << '\n';
}

std::string to_json(const Instance& inst) {
  const Forest& f = inst.forest;
  Json j;
  j["n"] = f.size();
  j["m"] = f.num_edges();
  Json edges = Json::array();
  for (const auto& [a, b] : f.edges()) edges.push_back({f.id(a), f.id(b)});
  j["edges"] = edges;
  Json nodes = Json::array();
  for (Index v = 0; v < f.size(); ++v) {
    if (f.degree(v) == 0) nodes.push_back(f.id(v));
  }
  if (!nodes.empty()) j["nodes"] = nodes;
  if (f.has_inputs()) {
    Json inputs = Json::array();
    for (const auto& in : f.input_list()) inputs.push_back({in.v, in.u, in.label});
    j["inputs"] = inputs;
  }
  if (inst.st) j["st"] = {inst.st->first, inst.st->second};
  return j.dump();
}

}  // namespace fmpc::forest
