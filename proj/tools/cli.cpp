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

// Command-line front end. Links only the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forestmpc/forestmpc.h"

namespace {

constexpr int kExitVerifyFailed = 20;

struct ApiError {
  int status;
  std::string message;
};

void ok(int status) {
  if (status != FMPC_OK) throw ApiError{status, fmpc_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ForestPtr = std::unique_ptr<fmpc_forest, Deleter<fmpc_forest, fmpc_forest_free>>;
using ProblemPtr = std::unique_ptr<fmpc_problem, Deleter<fmpc_problem, fmpc_problem_free>>;
using ResultPtr = std::unique_ptr<fmpc_result, Deleter<fmpc_result, fmpc_result_free>>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  fmpc_string_free(s);
  return out;
}

void write_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ApiError{FMPC_IO, "cannot write " + path};
  out << text;
}

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError{FMPC_IO, "cannot open " + path};
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fmpc_algo algo_of(const std::string& name) {
  if (name == "maxid") return FMPC_ALGO_MAXID;
  if (name == "cc") return FMPC_ALGO_CC;
  if (name == "root") return FMPC_ALGO_ROOT;
  return FMPC_ALGO_LCL;
}

// Flags shared by solve and bench. Values land in `opts` only when given,
// so they override the config file.
struct Shared {
  double delta = 0;
  double c_loc = 0;
  std::uint64_t machine_count = 0;
  std::uint64_t bandwidth = 0;
  std::uint64_t light = 0;
  std::uint64_t full = 0;
  std::uint64_t subtree = 0;
  std::uint64_t dhat = 0;
  std::uint64_t iters_coeff = 0;
  std::uint64_t seed = 0;
  bool strict = false;
  bool force_fallback = false;
  bool instrument = false;
  bool verify = false;
  std::string algo = "cc";
  std::string problem;
  std::string stats;
  std::map<std::string, CLI::Option*> opt;

  void attach(CLI::App* app) {
    opt["delta"] = app->add_option("--delta", delta, "Local memory exponent")->check(CLI::Range(0.0, 1.0));
    opt["c-loc"] = app->add_option("--c-loc", c_loc, "Local memory constant");
    opt["machine-count"] = app->add_option("--machine-count", machine_count, "Number of machines (0 derives)");
    opt["bandwidth"] = app->add_option("--bandwidth", bandwidth, "Words per machine per round (0 uses S)");
    opt["light-threshold"] = app->add_option("--light-threshold", light, "Light threshold L (0 derives)");
    opt["full-threshold"] = app->add_option("--full-threshold", full, "Full threshold F (0 derives)");
    opt["subtree-threshold"] = app->add_option("--subtree-threshold", subtree, "LCL subtree threshold H (0 derives)");
    opt["dhat"] = app->add_option("--dhat", dhat, "Diameter bound; first guess for cc and root");
    opt["iters-coeff"] = app->add_option("--iters-coeff", iters_coeff, "Iteration coefficient");
    opt["seed"] = app->add_option("--seed", seed, "Seed for generated instances");
    opt["strict-memory"] = app->add_flag("--strict-memory", strict, "Abort on the first memory violation");
    opt["force-fallback"] = app->add_flag("--force-fallback", force_fallback, "Skip the diameter guesses");
    opt["instrument"] = app->add_flag("--instrument", instrument, "Enable expensive invariant checks");
    app->add_flag("--verify", verify, "Check results against oracles or the LCL verifier");
    app->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"maxid", "cc", "root", "lcl"}));
    app->add_option("--problem", problem, "LCL problem file (JSON)");
    app->add_option("--stats", stats, "Write stats JSON to this path");
  }

  void apply(fmpc_options& o) const {
    auto given = [&](const char* k) { return opt.at(k)->count() > 0; };
    if (given("delta")) o.delta = delta;
    if (given("c-loc")) o.c_loc = c_loc;
    if (given("machine-count")) o.machine_count = machine_count;
    if (given("bandwidth")) o.bandwidth_words = bandwidth;
    if (given("light-threshold")) o.light_threshold = light;
    if (given("full-threshold")) o.full_threshold = full;
    if (given("subtree-threshold")) o.subtree_threshold = subtree;
    if (given("dhat")) o.dhat = dhat;
    if (given("iters-coeff")) o.iters_coeff = iters_coeff;
    if (given("seed")) o.seed = seed;
    if (given("strict-memory")) o.strict_memory = strict ? 1 : 0;
    if (given("force-fallback")) o.force_fallback = force_fallback ? 1 : 0;
    if (given("instrument")) o.instrument = instrument ? 1 : 0;
  }
};

fmpc_options base_options(const std::string& config_flag) {
  fmpc_options o;
  fmpc_options_init(&o);
  std::string path = config_flag;
  if (path.empty()) {
    if (const char* env = std::getenv("FORESTMPC_CONFIG")) path = env;
  }
  if (!path.empty()) ok(fmpc_options_load(path.c_str(), &o));
  return o;
}

ProblemPtr load_problem(const std::string& path, const std::string& algo) {
  if (path.empty()) {
    if (algo == "lcl") throw ApiError{FMPC_CONFIG, "--algo lcl needs --problem"};
    return nullptr;
  }
  fmpc_problem* p = nullptr;
  ok(fmpc_problem_load(path.c_str(), &p));
  return ProblemPtr(p);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated low-space MPC algorithms on forests"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "Config file (JSON); defaults to $FORESTMPC_CONFIG");
  app.set_version_flag("--version", std::string(fmpc_version()));

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind, gen_out;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", gen_kind, "Generator kind")->required();
  gen->add_option("params", gen_params, "key=value parameters");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--out", gen_out, "Output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "Run an algorithm on an instance");
  Shared solve_flags;
  std::string solve_in, solve_out;
  solve->add_option("input", solve_in, "Forest file, or - for stdin")->required();
  solve->add_option("-o,--out", solve_out, "Output path (default stdout)");
  solve_flags.attach(solve);

  auto* verify = app.add_subcommand("verify", "Check an output file against an instance");
  std::string ver_in, ver_labels, ver_algo = "lcl", ver_problem;
  verify->add_option("input", ver_in, "Forest file")->required();
  verify->add_option("output", ver_labels, "Output file produced by solve")->required();
  verify->add_option("--algo", ver_algo, "Algorithm that produced the output")
      ->check(CLI::IsMember({"maxid", "cc", "root", "lcl"}));
  verify->add_option("--problem", ver_problem, "LCL problem file (JSON)");

  auto* bench = app.add_subcommand("bench", "Sweep generated instances and print CSV");
  Shared bench_flags;
  std::string family, bench_out;
  std::vector<std::string> fixed, sweeps;
  std::uint64_t reps = 1;
  bench->add_option("--family", family, "Generator kind")->required();
  bench->add_option("--param", fixed, "Fixed key=value generator parameter");
  bench->add_option("--sweep", sweeps, "key=v1,v2,... swept over; several keys form a grid")->required();
  bench->add_option("--reps", reps, "Repetitions per point")->check(CLI::PositiveNumber);
  bench->add_option("-o,--out", bench_out, "CSV path (default stdout)");
  bench_flags.attach(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::string params;
      for (const auto& p : gen_params) params += p + " ";
      fmpc_forest* f = nullptr;
      ok(fmpc_forest_generate(gen_kind.c_str(), params.c_str(), gen_seed, &f));
      ForestPtr forest(f);
      char* text = nullptr;
      ok(fmpc_forest_to_text(forest.get(), &text));
      write_to(gen_out, take_string(text));
      return 0;
    }
    if (solve->parsed()) {
      fmpc_options o = base_options(config);
      solve_flags.apply(o);
      auto problem = load_problem(solve_flags.problem, solve_flags.algo);
      fmpc_forest* f = nullptr;
      ok(fmpc_forest_read(solve_in.c_str(), &f));
      ForestPtr forest(f);
      fmpc_result* r = nullptr;
      ok(fmpc_solve(forest.get(), algo_of(solve_flags.algo), &o, problem.get(), solve_flags.verify ? 1 : 0, &r));
      ResultPtr result(r);
      char* text = nullptr;
      ok(fmpc_result_output_text(result.get(), &text));
      write_to(solve_out, take_string(text));
      if (!solve_flags.stats.empty()) write_to(solve_flags.stats, std::string(fmpc_result_stats_json(result.get())) + "\n");
      if (fmpc_result_verified(result.get()) == 0) {
        std::cerr << "verification failed: " << fmpc_result_verify_detail(result.get()) << "\n";
        return kExitVerifyFailed;
      }
      return 0;
    }
    if (verify->parsed()) {
      auto problem = load_problem(ver_problem, ver_algo);
      fmpc_forest* f = nullptr;
      ok(fmpc_forest_read(ver_in.c_str(), &f));
      ForestPtr forest(f);
      const std::string text = read_all(ver_labels);
      int passed = 0;
      char* detail = nullptr;
      ok(fmpc_verify_text(forest.get(), algo_of(ver_algo), problem.get(), text.c_str(), &passed, &detail));
      std::cout << (passed ? "PASS" : "FAIL") << ": " << take_string(detail) << "\n";
      return passed ? 0 : kExitVerifyFailed;
    }
    if (bench->parsed()) {
      fmpc_options o = base_options(config);
      bench_flags.apply(o);
      auto problem = load_problem(bench_flags.problem, bench_flags.algo);
      std::vector<std::pair<std::string, std::vector<std::string>>> grid;
      for (const auto& s : sweeps) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ApiError{FMPC_INVALID_SPEC, "sweep '" + s + "' is not key=v1,v2"};
        grid.emplace_back(s.substr(0, eq), split(s.substr(eq + 1), ','));
      }
      std::ostringstream csv;
      csv << "family,point,rep,seed,algo,n,m,D,rounds,peak_local_words,peak_global_words,messages_total,"
             "violation_count,check_failures,verified\n";
      std::vector<std::size_t> idx(grid.size(), 0);
      bool done = grid.empty();
      while (!done) {
        std::string point, params;
        for (const auto& p : fixed) params += p + " ";
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const std::string kv = grid[g].first + "=" + grid[g].second[idx[g]];
          params += kv + " ";
          point += (g ? ";" : "") + kv;
        }
        for (std::uint64_t rep = 0; rep < reps; ++rep) {
          const std::uint64_t seed = o.seed + rep;
          fmpc_forest* f = nullptr;
          ok(fmpc_forest_generate(family.c_str(), params.c_str(), seed, &f));
          ForestPtr forest(f);
          fmpc_result* r = nullptr;
          ok(fmpc_solve(forest.get(), algo_of(bench_flags.algo), &o, problem.get(), bench_flags.verify ? 1 : 0, &r));
          ResultPtr result(r);
          auto stat = [&](const char* k) {
            std::uint64_t v = 0;
            ok(fmpc_result_stat(result.get(), k, &v));
            return v;
          };
          const int ver = fmpc_result_verified(result.get());
          csv << family << ',' << point << ',' << rep << ',' << seed << ',' << bench_flags.algo << ','
              << fmpc_forest_node_count(forest.get()) << ',' << fmpc_forest_edge_count(forest.get()) << ','
              << fmpc_forest_max_diameter(forest.get()) << ',' << stat("rounds") << ',' << stat("peak_local_words")
              << ',' << stat("peak_global_words") << ',' << stat("messages_total") << ','
              << stat("violation_count") << ',' << stat("check_failures") << ','
              << (ver < 0 ? "" : (ver ? "pass" : "fail")) << '\n';
        }
        std::size_t g = grid.size();
        while (g > 0 && ++idx[g - 1] == grid[g - 1].second.size()) idx[--g] = 0;
        done = g == 0;
      }
      write_to(bench_out, csv.str());
      return 0;
    }
  } catch (const ApiError& e) {
    std::cerr << "error: " << fmpc_status_name(e.status) << ": " << e.message << "\n";
    return e.status;
  }
  return 0;
}
