/*
 * magbloch_cli.cpp
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

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "magbloch/magbloch.h"

namespace {

int fail_status(mb_status status) {
  std::fprintf(stderr, "magbloch: %s (%s)\n", mb_last_error(), mb_last_error_name());
  return mb_status_exit_code(status);
}

struct Options {
  std::string model;
  std::string config;
  std::string out;
  int threads = 0;
};

int run(const std::string& pipeline, const Options& opt) {
  mb_status st = mb_set_threads(opt.threads);
  if (st != MB_OK) return fail_status(st);
  mb_config* cfg = nullptr;
  if (!opt.config.empty()) {
    st = mb_config_load(opt.config.c_str(), &cfg);
    if (st == MB_OK) st = mb_config_set_pipeline(cfg, pipeline.c_str());
    if (st == MB_OK && !opt.model.empty()) st = mb_config_set_model_path(cfg, opt.model.c_str());
  } else if (!opt.model.empty()) {
    st = mb_config_new(pipeline.c_str(), opt.model.c_str(), &cfg);
  } else {
    std::fprintf(stderr, "magbloch: --model or --config is required\n");
    return 2;
  }
  if (st == MB_OK && !opt.out.empty()) st = mb_config_set_output(cfg, opt.out.c_str());
  if (st != MB_OK) {
    mb_config_free(cfg);
    return fail_status(st);
  }
  mb_result* result = nullptr;
  st = mb_run(cfg, nullptr, &result);
  const char* dir = nullptr;
  if (st == MB_OK) st = mb_config_output(cfg, &dir);
  if (st == MB_OK) st = mb_result_write(result, dir);
  if (st != MB_OK) {
    mb_result_free(result);
    mb_config_free(cfg);
    return fail_status(st);
  }
  char* text = nullptr;
  if (mb_result_report_text(result, &text) == MB_OK) {
    std::fputs(text, stdout);
    mb_string_free(text);
  }
  const int code = mb_result_exit_code(result);
  std::printf("%s: %s, artifacts in %s\n", pipeline.c_str(), code == 0 ? "pass" : "fail", dir);
  mb_result_free(result);
  mb_config_free(cfg);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magbloch: band topology and Wannier localization for periodic magnetic Schroedinger operators"};
  app.require_subcommand(1);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check the model and the zero-flux condition"},
      {"bands", "band energies along a path in the Brillouin zone"},
      {"symmetry", "time-reversal, parity, embedding and translation checks"},
      {"chern", "first and second Chern numbers and the triviality verdict"},
      {"wannier", "symmetric Bloch gauge, Wannier functions and decay fit"},
      {"tpuv", "trace per unit volume from the Bloch and supercell routes"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--model", opt.model, "model file (overrides the configuration)");
    sub->add_option("--config", opt.config, "run configuration file");
    sub->add_option("--out", opt.out, "output directory (overrides the configuration)");
    sub->add_option("--threads", opt.threads, "worker threads for grid sweeps, 0 for all cores")
        ->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, opt);
}
