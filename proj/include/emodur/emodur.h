/* Copyright (c) 2026 emodur authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the emodur shared library.
 *
 * Every function returns an emodur_status code; EMODUR_OK is 0. On failure,
 * emodur_last_error() returns a thread-local message describing what went
 * wrong. Out-parameters are written only on success. Objects returned
 * through handle out-parameters must be released with the matching _free
 * function; strings returned through char** with emodur_string_free.
 *
 * Configs travel as JSON text with the same schemas the CLI uses; pass NULL
 * or "{}" for all-defaults.
 */

#ifndef EMODUR_EMODUR_H_
#define EMODUR_EMODUR_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct emodur_corpus emodur_corpus;
typedef struct emodur_model emodur_model;

typedef enum emodur_status {
  EMODUR_OK = 0,
  EMODUR_ERR_INVALID_ARGUMENT = 1,
  EMODUR_ERR_IO = 2,
  EMODUR_ERR_PARSE = 3,
  EMODUR_ERR_DIVERGED = 4,
  EMODUR_ERR_CONTRACT = 5,
  EMODUR_ERR_INTERNAL = 6
} emodur_status;

const char* emodur_status_name(int status);

/* Message of the most recent failure on this thread; never NULL. */
const char* emodur_last_error(void);

/* ---- corpus ---- */

int emodur_corpus_generate(const char* config_json, emodur_corpus** out);
int emodur_corpus_load(const char* path, emodur_corpus** out);
int emodur_corpus_save(const emodur_corpus* corpus, const char* path);
int emodur_corpus_size(const emodur_corpus* corpus, size_t* out);
void emodur_corpus_free(emodur_corpus* corpus);

/* ---- training ---- */

/* Trains on `corpus` per `config_json` (schema: the train config document).
 * When log_path is non-NULL the per-epoch JSON-lines log is written there. */
int emodur_train(const emodur_corpus* corpus, const char* config_json,
                 const char* log_path, emodur_model** out);

/* ---- model persistence ---- */

int emodur_model_save(const emodur_model* model, const char* path);
int emodur_model_load(const char* path, emodur_model** out);
void emodur_model_free(emodur_model* model);

/* ---- conversion and evaluation ---- */

/* Converts every record of `corpus` to `target_arousal` (1..7). The result
 * corpus holds the duration-modeled unit sequences with the target label.
 * When rows_json is non-NULL it receives a JSON array of per-record rows
 * (source/converted seconds). clamp_mode: "paper_corrected" (default when
 * NULL) or "paper_literal". */
int emodur_convert(const emodur_model* model, const emodur_corpus* corpus,
                   double target_arousal, const char* clamp_mode,
                   emodur_corpus** out_converted, char** rows_json);

/* Full evaluation over target arousal levels 1..7; writes the report as a
 * JSON document. */
int emodur_evaluate(const emodur_model* model, const emodur_corpus* corpus,
                    const char* clamp_mode, char** report_json);

/* Renders a report JSON document as CSV (arousal_level, mean_seconds,
 * std_seconds) or as a human-readable table. */
int emodur_report_to_csv(const char* report_json, char** csv_text);
int emodur_report_to_table(const char* report_json, char** table_text);

void emodur_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EMODUR_EMODUR_H_ */
