/*
 * io.hpp
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

#ifndef MAGBLOCH_IO_HPP
#define MAGBLOCH_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "chern.hpp"
#include "symmetry.hpp"
#include "wannier.hpp"

namespace magbloch {

using Json = nlohmann::ordered_json;

// Closed-form projector fields that stand in for a physical model.
struct SyntheticSpec {
  std::string kind;  // "skyrmion" (d = 2) or "dirac4" (d = 4)
  double mass = 1.0;
};

struct ModelDocument {
  LatticeModel model;
  std::optional<SyntheticSpec> synthetic;
  std::vector<GaussianTrial> trials;
  bool has_vector_potential = false;  // false: derive A from `field`
  int dimension() const;
};

// Model file: dimension, basis, potential, vector_potential, optional field,
// optional trials, or a synthetic block in place of the physical keys.
ModelDocument parse_model(const std::string& text);
ModelDocument load_model(const std::string& path);
std::string write_model(const ModelDocument& doc);

struct Tolerances {
  double gap = 1e-6;
  double trs = 1e-6;
  double flux = 1e-10;
  double integer = 1e-6;
};

inline const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"validate", "bands", "symmetry", "chern", "wannier", "tpuv"};
  return names;
}

struct RunConfig {
  std::string model;      // model file path, relative paths resolve against the config file
  std::string pipeline;
  int cutoff = 5;
  IVec grid;              // empty: kDefaultGridSide per axis
  int rank = 1;           // lowest `rank` bands unless `bands` is given
  std::vector<int> bands; // explicit zero-based band indices
  Tolerances tol;
  std::string output = "out";
  std::vector<GaussianTrial> trials;
  // band path corners in reduced coordinates; empty selects the default path
  std::vector<std::vector<double>> path;
  int path_samples = 24;
  int count = 0;          // bands per path point; 0 selects highest relevant + 2
  std::vector<int> supercells{8, 16, 32, 64};
  int resolution = 0;     // real-space samples per cell axis; 0 selects 2N+2
  bool write_projector = false;

  RelevantSet relevant() const;
  IVec grid_for(int dim) const;
};

constexpr int kDefaultGridSide = 16;

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string write_config(const RunConfig& config);

std::string read_text_file(const std::string& path);
// Byte-exact file output; failures raise Io errors carrying the system message.
void write_text_file(const std::string& path, const std::string& text);

// Doubles with 17 significant digits.
std::string format_real(double v);

// Columns k1..kd,E1..Ecount.
std::string band_csv(const BandTable& table);
// Columns check,residual,tolerance,pass,cutoff.
std::string symmetry_csv(const std::vector<SymmetryRow>& rows);

Json chern_report_json(const ChernReport& report);

// Header: magic, d, N_1..N_d, M, m, cutoff (-1 for identity embeddings), as
// little-endian 64-bit integers; then P(kappa) row-major per grid point as
// little-endian (re, im) 64-bit floats.
std::string projector_container(const ProjectorField& field);
void write_projector_container(const std::string& path, const ProjectorField& field);
ProjectorField read_projector_container(const std::string& path);

// Header: magic, d, cells_1..cells_d, resolution (64-bit integers), cell volume
// (64-bit float); then the samples as (re, im) pairs, row-major.
std::string wannier_container(const WannierFunction& w);
void write_wannier_container(const std::string& path, const WannierFunction& w);
WannierFunction read_wannier_container(const std::string& path);

// Columns g1..gd,norm,mass with g the minimal-image cell offset.
std::string mass_csv(const WannierFunction& w, const Lattice& lat);
std::string decay_line(const DecayFit& fit);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};
// Minimal vector-graphics line plot; log_y plots log10 of positive values.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series, bool log_y = false);

}  // namespace magbloch

#endif
