/*
 * magbloch.h
 *
 * This source file is part of the magbloch project
 *
 * Copyright 2026 The magbloch authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MAGBLOCH_MAGBLOCH_H
#define MAGBLOCH_MAGBLOCH_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MB_API __attribute__((visibility("default")))
#else
#define MB_API
#endif

/* Status codes. Values 2..5 equal the process exit codes of the matching failure class. */
typedef enum mb_status {
  MB_OK = 0,
  MB_ERR_CONFIG = 2,
  MB_ERR_ASSUMPTION = 3,
  MB_ERR_NUMERICAL = 4,
  MB_ERR_OBSTRUCTION = 5,
  MB_ERR_IO = 6,
  MB_ERR_INVALID_ARGUMENT = 7,
  MB_ERR_INTERNAL = 8
} mb_status;

typedef struct mb_config mb_config;
typedef struct mb_model mb_model;
typedef struct mb_result mb_result;

MB_API const char* mb_version(void);

/* Message and short error name of the last failing call on this thread. */
MB_API const char* mb_last_error(void);
MB_API const char* mb_last_error_name(void);

/* Process exit code for a status: 0, 2, 3, 4 or 5. */
MB_API int mb_status_exit_code(mb_status status);

/* Caps worker threads for grid sweeps; 0 restores the hardware default. */
MB_API mb_status mb_set_threads(int threads);

/* Run configuration. Relative model paths resolve against the directory of
   the configuration file (or the working directory for mb_config_new). */
MB_API mb_status mb_config_new(const char* pipeline, const char* model_path, mb_config** out);
MB_API mb_status mb_config_parse(const char* json_text, mb_config** out);
MB_API mb_status mb_config_load(const char* path, mb_config** out);
MB_API mb_status mb_config_set_pipeline(mb_config* config, const char* pipeline);
MB_API mb_status mb_config_set_model_path(mb_config* config, const char* model_path);
MB_API mb_status mb_config_set_output(mb_config* config, const char* dir);
/* The returned pointer stays valid until the configuration is modified or freed. */
MB_API mb_status mb_config_output(const mb_config* config, const char** dir);
/* Serialized configuration; release with mb_string_free. */
MB_API mb_status mb_config_to_json(const mb_config* config, char** json_text);
MB_API void mb_config_free(mb_config* config);

MB_API mb_status mb_model_parse(const char* json_text, mb_model** out);
MB_API mb_status mb_model_load(const char* path, mb_model** out);
MB_API mb_status mb_model_dimension(const mb_model* model, int* dim);
/* Lowest `count` fiber eigenvalues at reduced momentum kappa[0..dim-1] with plane-wave cutoff. */
MB_API mb_status mb_model_energies(const mb_model* model, int cutoff, const double* kappa, int count,
                                   double* energies);
MB_API void mb_model_free(mb_model* model);

/* Runs the configured pipeline. `model` may be NULL to load the configured
   model file. Module failures do not fail the call: they are recorded in the
   result and reflected by mb_result_exit_code. */
MB_API mb_status mb_run(const mb_config* config, const mb_model* model, mb_result** out);
MB_API int mb_result_exit_code(const mb_result* result);
MB_API int mb_result_check_count(const mb_result* result);
/* Check i: name (valid while the result lives), pass flag, measured value, tolerance. */
MB_API mb_status mb_result_check(const mb_result* result, int i, const char** name, int* pass, double* value,
                                 double* tolerance);
/* report.json and report.txt contents; release with mb_string_free. */
MB_API mb_status mb_result_report_json(const mb_result* result, char** text);
MB_API mb_status mb_result_report_text(const mb_result* result, char** text);
/* Writes artifacts, report.json and report.txt into dir (created if missing). */
MB_API mb_status mb_result_write(const mb_result* result, const char* dir);
MB_API void mb_result_free(mb_result* result);

MB_API void mb_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
