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

#ifndef FORESTMPC_FORESTMPC_H_
#define FORESTMPC_FORESTMPC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FMPC_API __declspec(dllexport)
#elif defined(__GNUC__)
#define FMPC_API __attribute__((visibility("default")))
#else
#define FMPC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum fmpc_status {
  FMPC_OK = 0,
  FMPC_INVALID_SPEC = 1,
  FMPC_INVALID_INPUT = 2,
  FMPC_NOT_A_FOREST = 3,
  FMPC_NOT_A_TREE = 4,
  FMPC_UNKNOWN_NODE = 5,
  FMPC_MEMORY_EXCEEDED = 6,
  FMPC_ROUTING_ERROR = 7,
  FMPC_PHASE_FAILURE = 8,
  FMPC_CORRUPT_LOG = 9,
  FMPC_CORRUPT_STATE = 10,
  FMPC_INCOMPLETE = 11,
  FMPC_IO = 12,
  FMPC_CONFIG = 13,
  FMPC_INTERNAL = 14,
  FMPC_NULL_ARGUMENT = 15
} fmpc_status;

typedef enum fmpc_algo {
  FMPC_ALGO_MAXID = 0,
  FMPC_ALGO_CC = 1,
  FMPC_ALGO_ROOT = 2,
  FMPC_ALGO_LCL = 3
} fmpc_algo;

/* Tunables. Zero thresholds are derived from the input size. */
typedef struct fmpc_options {
  double delta;
  double c_loc;
  uint64_t machine_count;
  uint64_t bandwidth_words;
  int strict_memory;
  uint64_t light_threshold;
  uint64_t full_threshold;
  uint64_t subtree_threshold;
  uint64_t dhat;
  uint64_t iters_coeff;
  int force_fallback;
  int instrument;
  uint64_t seed;
} fmpc_options;

typedef struct fmpc_forest fmpc_forest;
typedef struct fmpc_problem fmpc_problem;
typedef struct fmpc_result fmpc_result;

FMPC_API const char* fmpc_version(void);
FMPC_API const char* fmpc_status_name(int status);
/* Message of the last failed call on this thread; empty when none. */
FMPC_API const char* fmpc_last_error(void);
/* Frees strings returned through char** out-parameters. */
FMPC_API void fmpc_string_free(char* s);

FMPC_API void fmpc_options_init(fmpc_options* opts);
/* Overrides the fields present in a JSON config file. */
FMPC_API int fmpc_options_load(const char* path, fmpc_options* opts);
FMPC_API int fmpc_options_parse(const char* json_text, fmpc_options* opts);

/* Reads the text or JSON forest format; "-" reads standard input. */
FMPC_API int fmpc_forest_read(const char* path, fmpc_forest** out);
FMPC_API int fmpc_forest_parse(const char* text, fmpc_forest** out);
/* params holds whitespace-separated key=value tokens. */
FMPC_API int fmpc_forest_generate(const char* kind, const char* params, uint64_t seed, fmpc_forest** out);
FMPC_API int fmpc_forest_to_text(const fmpc_forest* f, char** out);
FMPC_API uint64_t fmpc_forest_node_count(const fmpc_forest* f);
FMPC_API uint64_t fmpc_forest_edge_count(const fmpc_forest* f);
FMPC_API uint64_t fmpc_forest_node_id(const fmpc_forest* f, uint64_t index);
FMPC_API uint64_t fmpc_forest_max_diameter(const fmpc_forest* f);
FMPC_API void fmpc_forest_free(fmpc_forest* f);

FMPC_API int fmpc_problem_load(const char* path, fmpc_problem** out);
FMPC_API int fmpc_problem_parse(const char* json_text, fmpc_problem** out);
FMPC_API void fmpc_problem_free(fmpc_problem* p);

/* problem may be NULL unless algo is FMPC_ALGO_LCL. With verify set the
 * result is checked against sequential oracles or the LCL verifier. */
FMPC_API int fmpc_solve(const fmpc_forest* f, fmpc_algo algo, const fmpc_options* opts, const fmpc_problem* problem,
                        int verify, fmpc_result** out);
/* 1 when a labeling was produced, 0 for UNSOLVABLE. */
FMPC_API int fmpc_result_solvable(const fmpc_result* r);
/* 1 pass, 0 fail, -1 not checked. */
FMPC_API int fmpc_result_verified(const fmpc_result* r);
FMPC_API const char* fmpc_result_verify_detail(const fmpc_result* r);
/* Max-ID or component label of the node at a dense index (maxid, cc). */
FMPC_API uint64_t fmpc_result_label(const fmpc_result* r, uint64_t index);
/* Parent ID of the node at a dense index; a root names itself (root, lcl). */
FMPC_API uint64_t fmpc_result_parent(const fmpc_result* r, uint64_t index);
/* Output lines as written by the CLI. */
FMPC_API int fmpc_result_output_text(const fmpc_result* r, char** out);
FMPC_API const char* fmpc_result_stats_json(const fmpc_result* r);
/* Keys: rounds, peak_local_words, peak_global_words, messages_total,
 * violation_count, check_failures. */
FMPC_API int fmpc_result_stat(const fmpc_result* r, const char* key, uint64_t* value);
FMPC_API void fmpc_result_free(fmpc_result* r);

/* Checks output text against the forest. *passed receives 1 or 0 and
 * detail, when not NULL, a description to free with fmpc_string_free. */
FMPC_API int fmpc_verify_text(const fmpc_forest* f, fmpc_algo algo, const fmpc_problem* problem, const char* text,
                              int* passed, char** detail);

#ifdef __cplusplus
}
#endif

#endif /* FORESTMPC_FORESTMPC_H_ */
