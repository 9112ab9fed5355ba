/*
 * chern.hpp
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

#ifndef MAGBLOCH_CHERN_HPP
#define MAGBLOCH_CHERN_HPP

#include <optional>

#include "projector.hpp"

namespace magbloch {

// Convention factors relating the averaged W trace to the second Chern number:
// c2 = s / (4 pi^2 nu) * <Tr W>. Fixed once by calibrate_chern2 and asserted stable.
constexpr int kChern2Sign = 1;
constexpr double kChern2Nu = 1.0;

// Plaquette fluxes closer than this to +-pi are refused.
constexpr double kFluxBranchGuard = 1e-3;
constexpr double kMinLinkDeterminant = 1e-8;

struct Chern1Plaquette {
  std::array<int, 2> plane{0, 1};
  long value = 0;              // sum of plaquette branch integers, sign-adjusted
  double flux_over_2pi = 0.0;  // (1/2pi) * sum of principal fluxes, same sign convention
  double residual = 0.0;       // |flux_over_2pi - value|
  double max_abs_flux = 0.0;
  double min_link = 1.0;
};

// `slice` fixes the transverse indices; entries on the plane axes are ignored.
Chern1Plaquette chern1_plaquette(const ProjectorField& field, int i, int j, const IVec& slice = {});

struct Chern1Curvature {
  std::array<int, 2> plane{0, 1};
  double value = 0.0;                // average over all transverse slices
  double imaginary = 0.0;            // |imaginary part| of the average
  std::vector<double> per_slice;     // transverse slices in row-major order
};

Chern1Curvature chern1_curvature(const ProjectorField& field, int i, int j);

struct Chern2Plaquette {
  long value = 0;
  double raw = 0.0;
  double residual = 0.0;
  double max_abs_phase = 0.0;
  double min_singular = 1.0;
};

Chern2Plaquette chern2_plaquette(const ProjectorField& field, int sign = kChern2Sign);

struct Chern2Curvature {
  double value = 0.0;        // s / (4 pi^2 nu) <Tr W>
  double average = 0.0;      // raw grid average of Tr W
  double imaginary = 0.0;    // max |Im Tr W|
};

Chern2Curvature chern2_curvature(const ProjectorField& field, int sign = kChern2Sign, double nu = kChern2Nu);

struct Chern2Calibration {
  int sign = 0;
  double nu = 0.0;
  long plaquette = 0;
  double average = 0.0;
};

// Derives (s, nu) from the rank-two Dirac fixture with mass 3, extrapolating the
// curvature average from n^4 and (n+4)^4 grids. `average` is the extrapolated value.
Chern2Calibration calibrate_chern2(int n = 12);

// (1/|W|) <values>
double tpuv_bloch(const std::vector<double>& values, double volume);

struct SupercellEstimate {
  int L = 0;
  int window = 0;
  double value = 0.0;
};

// Trace per unit volume of the relevant projector from finite supercells (d <= 2):
// the discrete-torus kernel diagonal is sampled on the centred window of ceil(L/2)^d cells.
std::vector<SupercellEstimate> tpuv_supercell(const LatticeModel& model, const PlaneWaveBasis& basis,
                                              const RelevantSet& I, const std::vector<int>& sizes,
                                              int samples_per_cell = 0);

enum class Verdict { Trivial, NonTrivial, Indeterminate };
std::string verdict_name(Verdict v);

struct ChernInputs {
  int dim = 0;
  int rank = 0;
  std::vector<std::pair<std::array<int, 2>, long>> c1;
  std::optional<long> c2;
};

struct VerdictResult {
  Verdict verdict = Verdict::Indeterminate;
  int sigma = 0;
};

int guaranteed_sections(int d, int m);
VerdictResult triviality_verdict(const ChernInputs& in);

struct ChernReport {
  int dim = 0;
  int rank = 0;
  std::vector<Chern1Plaquette> c1;
  std::vector<Chern1Curvature> c1_curvature;
  std::optional<Chern2Plaquette> c2;
  std::optional<Chern2Curvature> c2_curvature;
  double instanton_charge = 0.0;  // (1/|W|) <Tr W>
  double instanton_raw = 0.0;     // <Tr W>
  VerdictResult verdict;
  int calibration_sign = kChern2Sign;
  double calibration_nu = kChern2Nu;
};

ChernReport chern_report(const ProjectorField& field, double volume);

}  // namespace magbloch

#endif
