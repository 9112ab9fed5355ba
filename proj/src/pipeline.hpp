/*
 * pipeline.hpp
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

#ifndef MAGBLOCH_PIPELINE_HPP
#define MAGBLOCH_PIPELINE_HPP

#include "io.hpp"

namespace magbloch {

struct CheckEntry {
  std::string stage;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  // exit code contributed when the check fails; 0 marks an informational row
  int failure_code = 0;
  std::string detail;
};

struct StageError {
  std::string stage;
  std::string kind;  // config, assumption, numerical, obstruction, io, internal
  std::string name;
  std::string message;
  int exit_code = 0;
};

struct Artifact {
  std::string file;
  std::string content;
};

struct PipelineResult {
  std::string pipeline;
  std::string model;
  std::vector<CheckEntry> checks;
  Json values = Json::object();
  std::vector<Artifact> artifacts;
  std::optional<StageError> error;

  // Error exit code, else the code of the first failed check, else 0.
  int exit_code() const;
};

// Runs a pipeline on an already loaded model. Pure: artifacts are kept in
// memory until write_report. Module errors are captured with stage context.
PipelineResult run_pipeline(const RunConfig& config, const ModelDocument& model);

// Loads the model named by the configuration, resolving relative paths against
// base_dir, then runs the pipeline. Load failures are reported in the result.
PipelineResult run_pipeline_files(const RunConfig& config, const std::string& base_dir);

Json report_json(const PipelineResult& result);
// One "path = value" line per leaf of report_json, in document order.
std::string report_text(const PipelineResult& result);
std::string flatten_json(const Json& doc);

// Creates `dir` and writes every artifact plus report.json and report.txt.
void write_report(const PipelineResult& result, const std::string& dir);

std::string error_kind_name(ErrorKind kind);

}  // namespace magbloch

#endif
