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

// Exercises the C interface from plain C.

#include <forestmpc/forestmpc.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  fmpc_options opts;
  fmpc_options_init(&opts);
  EXPECT(opts.delta == 0.5);
  EXPECT(fmpc_options_parse("{\"seed\": 7, \"instrument\": true}", &opts) == FMPC_OK);
  EXPECT(opts.seed == 7 && opts.instrument == 1);
  EXPECT(fmpc_options_parse("{\"colour\": 1}", &opts) == FMPC_CONFIG);
  EXPECT(strlen(fmpc_last_error()) > 0);

  fmpc_forest* f = NULL;
  EXPECT(fmpc_forest_parse("5 3\n1 2\n2 3\n7 9\n", &f) == FMPC_OK);
  EXPECT(fmpc_forest_node_count(f) == 5);
  EXPECT(fmpc_forest_edge_count(f) == 3);

  fmpc_result* r = NULL;
  EXPECT(fmpc_solve(f, FMPC_ALGO_CC, &opts, NULL, 1, &r) == FMPC_OK);
  EXPECT(fmpc_result_verified(r) == 1);
  for (uint64_t i = 0; i < fmpc_forest_node_count(f); ++i) {
    uint64_t id = fmpc_forest_node_id(f, i);
    EXPECT(fmpc_result_label(r, i) == (id <= 3 ? 3u : 9u));
  }
  uint64_t rounds = 0;
  EXPECT(fmpc_result_stat(r, "rounds", &rounds) == FMPC_OK && rounds > 0);
  EXPECT(fmpc_result_stat(r, "no_such_stat", &rounds) != FMPC_OK);
  char* text = NULL;
  EXPECT(fmpc_result_output_text(r, &text) == FMPC_OK);
  int passed = 0;
  EXPECT(fmpc_verify_text(f, FMPC_ALGO_CC, NULL, text, &passed, NULL) == FMPC_OK && passed == 1);
  EXPECT(fmpc_verify_text(f, FMPC_ALGO_CC, NULL, "1 1\n2 3\n3 3\n7 9\n9 9\n", &passed, NULL) == FMPC_OK &&
         passed == 0);
  fmpc_string_free(text);
  fmpc_result_free(r);

  fmpc_forest* cyc = NULL;
  EXPECT(fmpc_forest_parse("3 3\n1 2\n2 3\n3 1\n", &cyc) == FMPC_NOT_A_FOREST);
  EXPECT(cyc == NULL);
  EXPECT(fmpc_solve(NULL, FMPC_ALGO_CC, &opts, NULL, 0, &r) == FMPC_NULL_ARGUMENT);

  fmpc_forest_free(f);
  if (failures == 0) printf("capi: all checks passed\n");
  return failures != 0;
}
