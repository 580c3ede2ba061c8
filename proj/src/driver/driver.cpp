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

#include "driver/driver.hpp"

#include <algorithm>
#include <sstream>

#include "cc/solve.hpp"
#include "common/error.hpp"
#include "forest/oracles.hpp"
#include "json.hpp"
#include "maxid/solver.hpp"
#include "mpc/config.hpp"
#include "mpc/simulator.hpp"

namespace fmpc::driver {

using nlohmann::json;

namespace {

template <typename T>
void take(const json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfig, std::string("config key '") + key + "' has the wrong type");
  }
}

maxid::MaxIdParams maxid_params(const Options& o) {
  maxid::MaxIdParams p;
  p.dhat = std::max<std::uint64_t>(o.dhat, 2);
  p.light = o.light_threshold;
  p.full = o.full_threshold;
  p.iters_coeff = o.iters_coeff;
  p.instrument = o.instrument;
  return p;
}

cc::CcParams cc_params(const Options& o) {
  cc::CcParams p;
  p.maxid = maxid_params(o);
  p.start_dhat = o.dhat;
  p.force_fallback = o.force_fallback;
  return p;
}

json attempts_json(const cc::CcResult& r) {
  json a = json::array();
  for (const auto& g : r.attempts) {
    a.push_back({{"dhat", g.dhat},
                 {"preprocess_iterations", g.preprocess_iterations},
                 {"phases", g.phases},
                 {"success", g.success},
                 {"rounds", g.rounds}});
  }
  return a;
}

}  // namespace

void apply_config_json(Options& o, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kConfig, "config must be a JSON object");
  static const char* known[] = {"n", "delta", "c_loc", "machine_count", "bandwidth_words", "strict_mode",
                                "light_threshold", "full_threshold", "subtree_threshold", "dhat",
                                "iters_coeff", "force_fallback", "instrument", "seed"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known)) {
      fail(ErrorCode::kConfig, "unknown config key '" + key + "'");
    }
  }
  take(j, "delta", o.delta);
  take(j, "c_loc", o.c_loc);
  take(j, "machine_count", o.machine_count);
  take(j, "bandwidth_words", o.bandwidth_words);
  take(j, "strict_mode", o.strict_memory);
  take(j, "light_threshold", o.light_threshold);
  take(j, "full_threshold", o.full_threshold);
  take(j, "subtree_threshold", o.subtree_threshold);
  take(j, "dhat", o.dhat);
  take(j, "iters_coeff", o.iters_coeff);
  take(j, "force_fallback", o.force_fallback);
  take(j, "instrument", o.instrument);
  take(j, "seed", o.seed);
}

Algo parse_algo(const std::string& name) {
  if (name == "maxid") return Algo::kMaxId;
  if (name == "cc") return Algo::kCc;
  if (name == "root") return Algo::kRoot;
  if (name == "lcl") return Algo::kLcl;
  fail(ErrorCode::kConfig, "unknown algorithm '" + name + "'");
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::kMaxId:
      return "maxid";
    case Algo::kCc:
      return "cc";
    case Algo::kRoot:
      return "root";
    case Algo::kLcl:
      return "lcl";
  }
  return "unknown";
}

Outcome run(const forest::Forest& f, Algo algo, const Options& o, const lcl::LclProblem* problem, bool verify) {
  if (algo == Algo::kLcl && !problem) fail(ErrorCode::kConfig, "the lcl algorithm needs a problem file");
  const auto cfg = mpc::MachineConfig::derive(f.size(), f.num_edges(), o.delta, o.c_loc, o.machine_count,
                                              o.bandwidth_words, o.strict_memory);
  std::vector<std::uint64_t> words(f.size());
  for (forest::Index v = 0; v < f.size(); ++v) words[v] = 1 + f.degree(v);
  mpc::Simulator sim(cfg, words);
  Outcome out;
  out.algo = algo;
  json extra = json::object();
  switch (algo) {
    case Algo::kMaxId: {
      auto p = maxid_params(o);
      if (o.dhat == 0) p.dhat = std::max<std::uint64_t>(2, forest::diameter(f).max);
      const auto r = maxid::maxid_solver(f, p, sim);
      out.label = r.output;
      extra["dhat"] = r.params.dhat;
      extra["light_threshold"] = r.params.light;
      extra["full_threshold"] = r.params.full;
      extra["iterations"] = r.params.iterations;
      extra["phase_budget"] = r.params.phase_budget;
      extra["compress_phases"] = r.run.phases;
      break;
    }
    case Algo::kCc: {
      const auto r = cc::solve_cc(f, cc_params(o), sim);
      out.label = r.label;
      extra["attempts"] = attempts_json(r);
      extra["fallback"] = r.fallback;
      break;
    }
    case Algo::kRoot: {
      const auto r = cc::root_forest(f, cc_params(o), sim);
      out.parent = r.parent;
      extra["attempts"] = attempts_json(r.cc);
      extra["fallback"] = r.cc.fallback;
      break;
    }
    case Algo::kLcl: {
      lcl::LclParams lp;
      lp.subtree_threshold = o.subtree_threshold;
      lp.rooting = cc_params(o);
      const auto r = lcl::lcl_solver(f, *problem, lp, sim);
      out.solvable = r.solvable;
      out.half_edge = r.labels;
      out.parent = r.parent;
      extra["problem"] = problem->name;
      extra["solvable"] = r.solvable;
      extra["subtree_threshold"] = r.subtree_threshold;
      extra["lcl_phases"] = r.phases;
      json reps = json::array();
      for (const auto& rep : r.reports) {
        reps.push_back({{"phase", rep.phase},
                        {"heavy", rep.heavy},
                        {"local_roots", rep.local_roots},
                        {"absorbed", rep.absorbed},
                        {"spliced", rep.spliced},
                        {"layers", rep.layers},
                        {"nodes_after", rep.nodes_after}});
      }
      extra["lcl_reports"] = reps;
      break;
    }
  }
  if (verify) {
    if (algo == Algo::kLcl && !out.solvable) {
      out.verify_detail = "unsolvable; nothing to verify";
    } else {
      const Verdict v = check(f, out, problem);
      out.verified = v.ok;
      out.verify_detail = v.detail;
    }
  }
  out.rounds = sim.stats().rounds_elapsed;
  out.peak_local = sim.ledger().peak_local;
  out.peak_global = sim.ledger().peak_global;
  out.messages = sim.stats().messages_total;
  out.violations = sim.ledger().violation_count;
  out.check_failures = sim.checks().total();
  json stats = json::parse(sim.stats_json());
  stats["algo"] = algo_name(algo);
  stats["n"] = f.size();
  stats["m"] = f.num_edges();
  stats["config"] = json::parse(cfg.to_json());
  stats["checks"] = {{"failures", sim.checks().total()}, {"by_kind", sim.checks().by_kind()}};
  stats.update(extra);
  if (verify) {
    stats["verify"] = {{"status", !out.verified ? "skipped" : (*out.verified ? "pass" : "fail")},
                       {"detail", out.verify_detail}};
  }
  out.stats_json = stats.dump();
  return out;
}

std::string format_output(const forest::Forest& f, const Outcome& out, const lcl::LclProblem* problem) {
  std::ostringstream s;
  switch (out.algo) {
    case Algo::kMaxId:
    case Algo::kCc:
      for (forest::Index v = 0; v < f.size(); ++v) s << f.id(v) << ' ' << out.label[v] << '\n';
      break;
    case Algo::kRoot:
      for (forest::Index v = 0; v < f.size(); ++v) {
        const forest::Index p = out.parent[v];
        s << f.id(v) << ' ' << f.id(p == forest::kNoIndex ? v : p) << '\n';
      }
      break;
    case Algo::kLcl:
      if (!out.solvable) {
        s << "UNSOLVABLE\n";
        break;
      }
      for (forest::Index v = 0; v < f.size(); ++v) {
        for (forest::Port q = 1; q <= f.degree(v); ++q) {
          s << f.id(v) << ' ' << f.id(f.neighbor(v, q)) << ' ' << problem->outputs[out.half_edge[v][q - 1]] << '\n';
        }
      }
      break;
  }
  return s.str();
}

namespace {

Verdict check_labels(const forest::Forest& f, const std::vector<forest::NodeId>& label) {
  const auto want = forest::bfs_component_max(f);
  std::uint64_t bad = 0;
  forest::NodeId first = 0;
  for (forest::Index v = 0; v < f.size(); ++v) {
    if (label[v] != want[v]) {
      if (bad++ == 0) first = f.id(v);
    }
  }
  if (bad == 0) return {true, "labels match the oracle"};
  return {false, std::to_string(bad) + " mismatches, first at node " + std::to_string(first)};
}

Verdict check_parents(const forest::Forest& f, const std::vector<forest::Index>& parent) {
  const auto comp = forest::component_roots(f);
  std::vector<std::uint64_t> roots(f.size(), 0);
  for (forest::Index v = 0; v < f.size(); ++v) {
    const forest::Index p = parent[v];
    if (p == forest::kNoIndex) {
      ++roots[comp[v]];
    } else if (p >= f.size() || f.port_to(v, p) == 0) {
      return {false, "node " + std::to_string(f.id(v)) + " points at a non-neighbour"};
    }
  }
  for (forest::Index v = 0; v < f.size(); ++v) {
    if (comp[v] == v && roots[v] != 1) {
      return {false, "component of node " + std::to_string(f.id(v)) + " has " + std::to_string(roots[v]) + " roots"};
    }
  }
  // With one root per component and parent edges inside the forest, a cycle
  // would need a component with no root; walk chains anyway to be explicit.
  std::vector<char> state(f.size(), 0);  // 0 unseen, 1 on stack, 2 done
  for (forest::Index s = 0; s < f.size(); ++s) {
    std::vector<forest::Index> chain;
    forest::Index v = s;
    while (v != forest::kNoIndex && state[v] == 0) {
      state[v] = 1;
      chain.push_back(v);
      v = parent[v];
    }
    if (v != forest::kNoIndex && state[v] == 1) return {false, "parent chain through node " + std::to_string(f.id(v)) + " cycles"};
    for (forest::Index u : chain) state[u] = 2;
  }
  return {true, "one root per component, acyclic parent chains"};
}

Verdict check_lcl(const forest::Forest& f, const lcl::LclProblem& p, const std::vector<lcl::Tuple>& labels) {
  const auto r = lcl::verify_lcl(f, p, labels);
  if (r.ok()) return {true, "all node and edge constraints hold"};
  return {false, std::string(lcl::verify_status_name(r.status)) + ": " + r.detail};
}

}  // namespace

Verdict check(const forest::Forest& f, const Outcome& out, const lcl::LclProblem* problem) {
  switch (out.algo) {
    case Algo::kMaxId:
    case Algo::kCc:
      return check_labels(f, out.label);
    case Algo::kRoot:
      return check_parents(f, out.parent);
    case Algo::kLcl:
      if (!out.solvable) return {false, "unsolvable; nothing to verify"};
      return check_lcl(f, *problem, out.half_edge);
  }
  return {false, "unknown algorithm"};
}

Verdict check_text(const forest::Forest& f, Algo algo, const lcl::LclProblem* problem, const std::string& text) {
  if (algo == Algo::kLcl && !problem) fail(ErrorCode::kConfig, "the lcl verifier needs a problem file");
  std::istringstream in(text);
  std::string line;
  std::uint64_t lineno = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::kInvalidInput, "line " + std::to_string(lineno) + ": " + why);
  };
  std::vector<forest::NodeId> label(f.size(), 0);
  std::vector<forest::Index> parent(f.size(), forest::kNoIndex);
  std::vector<char> seen(f.size(), 0);
  std::vector<lcl::Tuple> half(f.size());
  for (forest::Index v = 0; v < f.size(); ++v) half[v].assign(f.degree(v), 0xff);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!(ls >> a)) continue;
    if (algo == Algo::kLcl && a == "UNSOLVABLE") return {false, "the labeling claims the instance is unsolvable"};
    if (!(ls >> b)) bad("expected at least two fields");
    forest::NodeId x = 0, y = 0;
    try {
      x = std::stoull(a);
      y = std::stoull(b);
    } catch (const std::exception&) {
      bad("node IDs must be integers");
    }
    const auto vx = f.find(x);
    if (!vx) bad("unknown node " + a);
    if (algo == Algo::kLcl) {
      if (!(ls >> c)) bad("expected 'v u label'");
      const auto vy = f.find(y);
      if (!vy) bad("unknown node " + b);
      const forest::Port q = f.port_to(*vx, *vy);
      if (q == 0) bad("nodes " + a + " and " + b + " are not adjacent");
      half[*vx][q - 1] = problem->output_index(c);
    } else if (algo == Algo::kRoot) {
      if (y == x) {
        parent[*vx] = forest::kNoIndex;
      } else {
        const auto vy = f.find(y);
        if (!vy) bad("unknown node " + b);
        parent[*vx] = *vy;
      }
      seen[*vx] = 1;
    } else {
      label[*vx] = y;
      seen[*vx] = 1;
    }
  }
  if (algo != Algo::kLcl) {
    for (forest::Index v = 0; v < f.size(); ++v) {
      if (!seen[v]) return {false, "no output for node " + std::to_string(f.id(v))};
    }
  }
  switch (algo) {
    case Algo::kMaxId:
    case Algo::kCc:
      return check_labels(f, label);
    case Algo::kRoot:
      return check_parents(f, parent);
    case Algo::kLcl:
      return check_lcl(f, *problem, half);
  }
  return {false, "unknown algorithm"};
}

}  // namespace fmpc::driver
