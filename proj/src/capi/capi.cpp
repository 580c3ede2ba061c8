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

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "common/error.hpp"
#include "driver/driver.hpp"
#include "forest/generators.hpp"
#include "forest/io.hpp"
#include "forest/oracles.hpp"
#include "forestmpc/forestmpc.h"
#include "lcl/problem.hpp"

struct fmpc_forest {
  fmpc::forest::Instance inst;
};

struct fmpc_problem {
  fmpc::lcl::LclProblem problem;
};

struct fmpc_result {
  fmpc::driver::Outcome outcome;
  const fmpc::forest::Forest* forest = nullptr;  // borrowed; must outlive the result
  const fmpc::lcl::LclProblem* problem = nullptr;
  fmpc::forest::Forest forest_copy;
  fmpc::lcl::LclProblem problem_copy;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
int guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return FMPC_OK;
  } catch (const fmpc::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FMPC_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FMPC_INTERNAL;
  }
}

int null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FMPC_NULL_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fmpc::driver::Options to_options(const fmpc_options* o) {
  fmpc::driver::Options d;
  if (!o) return d;
  d.delta = o->delta;
  d.c_loc = o->c_loc;
  d.machine_count = o->machine_count;
  d.bandwidth_words = o->bandwidth_words;
  d.strict_memory = o->strict_memory != 0;
  d.light_threshold = o->light_threshold;
  d.full_threshold = o->full_threshold;
  d.subtree_threshold = o->subtree_threshold;
  d.dhat = o->dhat;
  d.iters_coeff = o->iters_coeff;
  d.force_fallback = o->force_fallback != 0;
  d.instrument = o->instrument != 0;
  d.seed = o->seed;
  return d;
}

void from_options(const fmpc::driver::Options& d, fmpc_options* o) {
  o->delta = d.delta;
  o->c_loc = d.c_loc;
  o->machine_count = d.machine_count;
  o->bandwidth_words = d.bandwidth_words;
  o->strict_memory = d.strict_memory ? 1 : 0;
  o->light_threshold = d.light_threshold;
  o->full_threshold = d.full_threshold;
  o->subtree_threshold = d.subtree_threshold;
  o->dhat = d.dhat;
  o->iters_coeff = d.iters_coeff;
  o->force_fallback = d.force_fallback ? 1 : 0;
  o->instrument = d.instrument ? 1 : 0;
  o->seed = d.seed;
}

std::string read_whole(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fmpc::fail(fmpc::ErrorCode::kIo, std::string("cannot open ") + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fmpc::driver::Algo to_algo(fmpc_algo a) {
  switch (a) {
    case FMPC_ALGO_MAXID:
      return fmpc::driver::Algo::kMaxId;
    case FMPC_ALGO_CC:
      return fmpc::driver::Algo::kCc;
    case FMPC_ALGO_ROOT:
      return fmpc::driver::Algo::kRoot;
    case FMPC_ALGO_LCL:
      return fmpc::driver::Algo::kLcl;
  }
  fmpc::fail(fmpc::ErrorCode::kConfig, "unknown algorithm");
}

}  // namespace

extern "C" {

const char* fmpc_version(void) { return "1.0.0"; }

const char* fmpc_status_name(int status) {
  if (status == FMPC_NULL_ARGUMENT) return "NullArgument";
  if (status < 0 || status > FMPC_INTERNAL) return "Unknown";
  return fmpc::error_code_name(static_cast<fmpc::ErrorCode>(status));
}

const char* fmpc_last_error(void) { return last_error.c_str(); }

void fmpc_string_free(char* s) { std::free(s); }

void fmpc_options_init(fmpc_options* opts) {
  if (opts) from_options(fmpc::driver::Options{}, opts);
}

int fmpc_options_parse(const char* json_text, fmpc_options* opts) {
  if (!json_text || !opts) return null_arg("json_text or opts");
  return guard([&] {
    auto d = to_options(opts);
    fmpc::driver::apply_config_json(d, json_text);
    from_options(d, opts);
  });
}

int fmpc_options_load(const char* path, fmpc_options* opts) {
  if (!path || !opts) return null_arg("path or opts");
  return guard([&] {
    auto d = to_options(opts);
    fmpc::driver::apply_config_json(d, read_whole(path));
    from_options(d, opts);
  });
}

int fmpc_forest_read(const char* path, fmpc_forest** out) {
  if (!path || !out) return null_arg("path or out");
  return guard([&] {
    auto f = std::make_unique<fmpc_forest>();
    if (std::strcmp(path, "-") == 0) {
      f->inst = fmpc::forest::read_any(std::cin);
    } else {
      f->inst = fmpc::forest::read_file(path);
    }
    *out = f.release();
  });
}

int fmpc_forest_parse(const char* text, fmpc_forest** out) {
  if (!text || !out) return null_arg("text or out");
  return guard([&] {
    auto f = std::make_unique<fmpc_forest>();
    std::istringstream in(text);
    f->inst = fmpc::forest::read_any(in);
    *out = f.release();
  });
}

int fmpc_forest_generate(const char* kind, const char* params, uint64_t seed, fmpc_forest** out) {
  if (!kind || !out) return null_arg("kind or out");
  return guard([&] {
    std::vector<std::string> tokens;
    std::istringstream in(params ? params : "");
    for (std::string t; in >> t;) tokens.push_back(t);
    auto f = std::make_unique<fmpc_forest>();
    f->inst = fmpc::forest::generate(fmpc::forest::parse_spec(kind, tokens, seed));
    *out = f.release();
  });
}

int fmpc_forest_to_text(const fmpc_forest* f, char** out) {
  if (!f || !out) return null_arg("forest or out");
  return guard([&] {
    std::ostringstream s;
    fmpc::forest::write_text(s, f->inst);
    *out = dup(s.str());
  });
}

uint64_t fmpc_forest_node_count(const fmpc_forest* f) { return f ? f->inst.forest.size() : 0; }
uint64_t fmpc_forest_edge_count(const fmpc_forest* f) { return f ? f->inst.forest.num_edges() : 0; }

uint64_t fmpc_forest_node_id(const fmpc_forest* f, uint64_t index) {
  if (!f || index >= f->inst.forest.size()) return 0;
  return f->inst.forest.id(static_cast<fmpc::forest::Index>(index));
}

uint64_t fmpc_forest_max_diameter(const fmpc_forest* f) {
  return f ? fmpc::forest::diameter(f->inst.forest).max : 0;
}

void fmpc_forest_free(fmpc_forest* f) { delete f; }

int fmpc_problem_parse(const char* json_text, fmpc_problem** out) {
  if (!json_text || !out) return null_arg("json_text or out");
  return guard([&] {
    auto p = std::make_unique<fmpc_problem>();
    p->problem = fmpc::lcl::parse_problem(json_text);
    *out = p.release();
  });
}

int fmpc_problem_load(const char* path, fmpc_problem** out) {
  if (!path || !out) return null_arg("path or out");
  return guard([&] {
    auto p = std::make_unique<fmpc_problem>();
    p->problem = fmpc::lcl::load_problem(path);
    *out = p.release();
  });
}

void fmpc_problem_free(fmpc_problem* p) { delete p; }

int fmpc_solve(const fmpc_forest* f, fmpc_algo algo, const fmpc_options* opts, const fmpc_problem* problem,
               int verify, fmpc_result** out) {
  if (!f || !out) return null_arg("forest or out");
  return guard([&] {
    auto r = std::make_unique<fmpc_result>();
    r->forest_copy = f->inst.forest;
    if (problem) r->problem_copy = problem->problem;
    r->forest = &r->forest_copy;
    r->problem = problem ? &r->problem_copy : nullptr;
    r->outcome = fmpc::driver::run(*r->forest, to_algo(algo), to_options(opts), r->problem, verify != 0);
    *out = r.release();
  });
}

int fmpc_result_solvable(const fmpc_result* r) { return r && r->outcome.solvable ? 1 : 0; }

int fmpc_result_verified(const fmpc_result* r) {
  if (!r || !r->outcome.verified) return -1;
  return *r->outcome.verified ? 1 : 0;
}

const char* fmpc_result_verify_detail(const fmpc_result* r) { return r ? r->outcome.verify_detail.c_str() : ""; }

uint64_t fmpc_result_label(const fmpc_result* r, uint64_t index) {
  if (!r || index >= r->outcome.label.size()) return 0;
  return r->outcome.label[index];
}

uint64_t fmpc_result_parent(const fmpc_result* r, uint64_t index) {
  if (!r || index >= r->outcome.parent.size()) return 0;
  const auto p = r->outcome.parent[index];
  return r->forest->id(p == fmpc::forest::kNoIndex ? static_cast<fmpc::forest::Index>(index) : p);
}

int fmpc_result_output_text(const fmpc_result* r, char** out) {
  if (!r || !out) return null_arg("result or out");
  return guard([&] { *out = dup(fmpc::driver::format_output(*r->forest, r->outcome, r->problem)); });
}

const char* fmpc_result_stats_json(const fmpc_result* r) { return r ? r->outcome.stats_json.c_str() : "{}"; }

int fmpc_result_stat(const fmpc_result* r, const char* key, uint64_t* value) {
  if (!r || !key || !value) return null_arg("result, key or value");
  const auto& o = r->outcome;
  const std::string k = key;
  if (k == "rounds") {
    *value = o.rounds;
  } else if (k == "peak_local_words") {
    *value = o.peak_local;
  } else if (k == "peak_global_words") {
    *value = o.peak_global;
  } else if (k == "messages_total") {
    *value = o.messages;
  } else if (k == "violation_count") {
    *value = o.violations;
  } else if (k == "check_failures") {
    *value = o.check_failures;
  } else {
    last_error = "unknown stat '" + k + "'";
    return FMPC_CONFIG;
  }
  return FMPC_OK;
}

void fmpc_result_free(fmpc_result* r) { delete r; }

int fmpc_verify_text(const fmpc_forest* f, fmpc_algo algo, const fmpc_problem* problem, const char* text,
                     int* passed, char** detail) {
  if (!f || !text || !passed) return null_arg("forest, text or passed");
  return guard([&] {
    const auto v = fmpc::driver::check_text(f->inst.forest, to_algo(algo), problem ? &problem->problem : nullptr, text);
    *passed = v.ok ? 1 : 0;
    if (detail) *detail = dup(v.detail);
  });
}

}  // extern "C"
