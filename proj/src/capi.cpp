/*
 * capi.cpp
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

#include "magbloch/magbloch.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>

#include "pipeline.hpp"

struct mb_config {
  magbloch::RunConfig config;
  std::string base_dir;
};

struct mb_model {
  magbloch::ModelDocument doc;
};

struct mb_result {
  magbloch::PipelineResult result;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_name;

mb_status set_error(mb_status status, const std::string& name, const std::string& message) {
  g_last_name = name;
  g_last_error = message;
  return status;
}

mb_status status_of(magbloch::ErrorKind kind) {
  switch (kind) {
    case magbloch::ErrorKind::Config: return MB_ERR_CONFIG;
    case magbloch::ErrorKind::Assumption: return MB_ERR_ASSUMPTION;
    case magbloch::ErrorKind::Numerical: return MB_ERR_NUMERICAL;
    case magbloch::ErrorKind::Obstruction: return MB_ERR_OBSTRUCTION;
    case magbloch::ErrorKind::Io: return MB_ERR_IO;
  }
  return MB_ERR_INTERNAL;
}

// Runs body and converts exceptions into status codes.
template <class F>
mb_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_name.clear();
    return MB_OK;
  } catch (const magbloch::Error& e) {
    return set_error(status_of(e.kind()), e.name(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(MB_ERR_INTERNAL, "out-of-memory", "allocation failed");
  } catch (const std::exception& e) {
    return set_error(MB_ERR_INTERNAL, "internal", e.what());
  }
}

mb_status null_argument(const char* what) {
  return set_error(MB_ERR_INVALID_ARGUMENT, "null-argument", std::string(what) + " must not be NULL");
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void check_pipeline(const std::string& name) {
  const auto& names = magbloch::pipeline_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    magbloch::fail(magbloch::ErrorKind::Config, "pipeline", "pipeline: unknown pipeline '" + name + "'");
}

}  // namespace

extern "C" {

MB_API const char* mb_version(void) { return "1.0.0"; }

MB_API const char* mb_last_error(void) { return g_last_error.c_str(); }

MB_API const char* mb_last_error_name(void) { return g_last_name.c_str(); }

MB_API int mb_status_exit_code(mb_status status) {
  switch (status) {
    case MB_OK: return 0;
    case MB_ERR_CONFIG:
    case MB_ERR_INVALID_ARGUMENT: return 2;
    case MB_ERR_ASSUMPTION: return 3;
    case MB_ERR_OBSTRUCTION: return 5;
    default: return 4;
  }
}

MB_API mb_status mb_set_threads(int threads) {
  if (threads < 0) return set_error(MB_ERR_INVALID_ARGUMENT, "threads", "thread count must be non-negative");
  return guarded([&] { magbloch::set_thread_count(threads); });
}

MB_API mb_status mb_config_new(const char* pipeline, const char* model_path, mb_config** out) {
  if (!pipeline || !model_path || !out) return null_argument("pipeline, model_path and out");
  *out = nullptr;
  return guarded([&] {
    check_pipeline(pipeline);
    auto c = std::make_unique<mb_config>();
    c->config.pipeline = pipeline;
    c->config.model = model_path;
    *out = c.release();
  });
}

MB_API mb_status mb_config_parse(const char* json_text, mb_config** out) {
  if (!json_text || !out) return null_argument("json_text and out");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<mb_config>();
    c->config = magbloch::parse_config(json_text);
    *out = c.release();
  });
}

MB_API mb_status mb_config_load(const char* path, mb_config** out) {
  if (!path || !out) return null_argument("path and out");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<mb_config>();
    c->config = magbloch::load_config(path);
    c->base_dir = std::filesystem::path(path).parent_path().string();
    *out = c.release();
  });
}

MB_API mb_status mb_config_set_pipeline(mb_config* config, const char* pipeline) {
  if (!config || !pipeline) return null_argument("config and pipeline");
  return guarded([&] {
    check_pipeline(pipeline);
    config->config.pipeline = pipeline;
  });
}

MB_API mb_status mb_config_set_model_path(mb_config* config, const char* model_path) {
  if (!config || !model_path) return null_argument("config and model_path");
  return guarded([&] {
    config->config.model = model_path;
    // an explicit path is taken relative to the working directory
    config->base_dir.clear();
  });
}

MB_API mb_status mb_config_set_output(mb_config* config, const char* dir) {
  if (!config || !dir) return null_argument("config and dir");
  return guarded([&] { config->config.output = dir; });
}

MB_API mb_status mb_config_output(const mb_config* config, const char** dir) {
  if (!config || !dir) return null_argument("config and dir");
  *dir = config->config.output.c_str();
  return MB_OK;
}

MB_API mb_status mb_config_to_json(const mb_config* config, char** json_text) {
  if (!config || !json_text) return null_argument("config and json_text");
  *json_text = nullptr;
  return guarded([&] { *json_text = duplicate(magbloch::write_config(config->config)); });
}

MB_API void mb_config_free(mb_config* config) { delete config; }

MB_API mb_status mb_model_parse(const char* json_text, mb_model** out) {
  if (!json_text || !out) return null_argument("json_text and out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<mb_model>();
    m->doc = magbloch::parse_model(json_text);
    *out = m.release();
  });
}

MB_API mb_status mb_model_load(const char* path, mb_model** out) {
  if (!path || !out) return null_argument("path and out");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<mb_model>();
    m->doc = magbloch::load_model(path);
    *out = m.release();
  });
}

MB_API mb_status mb_model_dimension(const mb_model* model, int* dim) {
  if (!model || !dim) return null_argument("model and dim");
  *dim = model->doc.dimension();
  return MB_OK;
}

MB_API mb_status mb_model_energies(const mb_model* model, int cutoff, const double* kappa, int count,
                                   double* energies) {
  if (!model || !kappa || !energies) return null_argument("model, kappa and energies");
  return guarded([&] {
    if (model->doc.synthetic)
      magbloch::fail(magbloch::ErrorKind::Config, "synthetic", "synthetic models have no fiber Hamiltonian");
    if (cutoff < 1) magbloch::fail(magbloch::ErrorKind::Config, "cutoff", "cutoff must be at least 1");
    const int d = model->doc.dimension();
    magbloch::PlaneWaveBasis basis(d, cutoff);
    if (count < 1 || count > basis.size())
      magbloch::fail(magbloch::ErrorKind::Config, "count", "count must lie between 1 and the basis size");
    magbloch::LatticeModel lm = model->doc.model;
    if (!model->doc.has_vector_potential && lm.field)
      lm.vector_potential = magbloch::potential_from_field(lm.lattice, *lm.field);
    magbloch::validate_model(lm);
    magbloch::RVec k = Eigen::Map<const magbloch::RVec>(kappa, d);
    auto sol = magbloch::solve_bands(magbloch::assemble_fiber(lm, basis, k), k, count);
    for (int i = 0; i < count; ++i) energies[i] = sol.energies[i];
  });
}

MB_API void mb_model_free(mb_model* model) { delete model; }

MB_API mb_status mb_run(const mb_config* config, const mb_model* model, mb_result** out) {
  if (!config || !out) return null_argument("config and out");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<mb_result>();
    r->result = model ? magbloch::run_pipeline(config->config, model->doc)
                      : magbloch::run_pipeline_files(config->config, config->base_dir);
    *out = r.release();
  });
}

MB_API int mb_result_exit_code(const mb_result* result) { return result ? result->result.exit_code() : 2; }

MB_API int mb_result_check_count(const mb_result* result) {
  return result ? static_cast<int>(result->result.checks.size()) : 0;
}

MB_API mb_status mb_result_check(const mb_result* result, int i, const char** name, int* pass, double* value,
                                 double* tolerance) {
  if (!result) return null_argument("result");
  if (i < 0 || i >= static_cast<int>(result->result.checks.size()))
    return set_error(MB_ERR_INVALID_ARGUMENT, "index", "check index out of range");
  const auto& c = result->result.checks[i];
  if (name) *name = c.name.c_str();
  if (pass) *pass = c.pass ? 1 : 0;
  if (value) *value = c.value;
  if (tolerance) *tolerance = c.tolerance;
  return MB_OK;
}

MB_API mb_status mb_result_report_json(const mb_result* result, char** text) {
  if (!result || !text) return null_argument("result and text");
  *text = nullptr;
  return guarded([&] { *text = duplicate(magbloch::report_json(result->result).dump(2) + "\n"); });
}

MB_API mb_status mb_result_report_text(const mb_result* result, char** text) {
  if (!result || !text) return null_argument("result and text");
  *text = nullptr;
  return guarded([&] { *text = duplicate(magbloch::report_text(result->result)); });
}

MB_API mb_status mb_result_write(const mb_result* result, const char* dir) {
  if (!result || !dir) return null_argument("result and dir");
  return guarded([&] { magbloch::write_report(result->result, dir); });
}

MB_API void mb_result_free(mb_result* result) { delete result; }

MB_API void mb_string_free(char* text) { std::free(text); }

}  // extern "C"
