/*
 * wannier.hpp
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

#ifndef MAGBLOCH_WANNIER_HPP
#define MAGBLOCH_WANNIER_HPP

#include "symmetry.hpp"

namespace magbloch {

constexpr double kTransportMinSingular = 1e-8;
constexpr double kTrialMinSingular = 1e-6;
// Largest accepted change of the mismatch phase between unwrap neighbours.
constexpr double kMaxUnwrapStep = kPi / 2.0;
// Accepted |theta(-k) - theta(k)| mod 2 pi.
constexpr double kEvennessTolerance = 1e-3;
// Masses below this are treated as numerical noise by the decay fit.
constexpr double kMassFloor = 1e-14;
// Input time-reversal residual accepted by the rank-one gauge.
constexpr double kGaugeTrsTolerance = 1e-6;

// Orthonormal frames psi_1..psi_m spanning ran P at each grid point.
// Storage position s holds the frame at raw index lower + s.
struct SectionField {
  KGrid grid;
  int M = 0;
  int m = 0;
  EmbeddingKind embedding = EmbeddingKind::Identity;
  PlaneWaveBasis basis;
  IVec lower;
  std::vector<CMat> frames;
  double periodicity = 0.0;   // max mismatch at the wrap, through the embedding
  double smoothness = 0.0;    // gauge_smoothness of the result
  double trs = -1.0;          // max ||psi(-k) - J psi(k)||, negative when not applicable
  double input_trs = -1.0;    // symmetry residual of the input field
  double min_singular = 1.0;  // smallest Gram or transport singular value met

  int dim() const { return grid.dim(); }
  // Frame at an arbitrary integer index, wrapping through the embedding.
  CMat at(const IVec& raw) const;
  IVec raw_index(std::size_t flat) const;
};

struct SectionInvariants {
  double orthonormality = 0.0;  // max ||psi^dagger psi - 1||
  double range = 0.0;           // max ||P psi - psi||
  bool pass(double tol = 1e-10) const { return orthonormality <= tol && range <= tol; }
};

SectionInvariants section_invariants(const SectionField& section, const ProjectorField& field);

// J-fixed unit vector in the line spanned by psi0 (rank one).
CVec trs_fix_origin(const CVec& psi0, const FiberSymmetry& J);

// Transports `start` from raw index `from` by |steps| grid steps along `axis`
// (sign gives the direction); returns steps + 1 frames, the first being `start`.
std::vector<CMat> parallel_transport(const ProjectorField& field, const CMat& start, const IVec& from, int axis,
                                     int steps);

// Winding of the transported Wilson-loop phase arg det <psi(start)|psi(end)> along
// axis b, followed as the loop moves once around axis a (through the origin).
long transport_winding(const ProjectorField& field, int a, int b);

// Time-reversal symmetric rank-one gauge by axis-wise transport, reflection and
// phase redistribution. Raises an obstruction error on nonzero winding or an
// uneven mismatch phase. A field whose symmetry residual exceeds `trs_tolerance`
// is refused: with an obstruction error when some coordinate plane carries a
// nonzero transport winding, with an assumption error otherwise.
SectionField rank1_trs_gauge(const ProjectorField& field, const FiberSymmetry& J,
                             double trs_tolerance = kGaugeTrsTolerance);

using TrialFunction = std::function<CMat(const RVec& kappa)>;

struct GaussianTrial {
  RVec center;  // reduced real-space coordinates
  double width = 0.2;
};

// Plane-wave coefficients of the fiber component of a Gaussian at reduced momentum kappa,
// one unit column per trial.
CMat gaussian_trials(const Lattice& lat, const PlaneWaveBasis& basis, const std::vector<GaussianTrial>& trials,
                     const RVec& kappa);

// phi_a = P g_a followed by Loewdin orthonormalization.
SectionField multiband_projection_gauge(const ProjectorField& field, const TrialFunction& trials);
SectionField multiband_projection_gauge(const ProjectorField& field, const Lattice& lat,
                                        const std::vector<GaussianTrial>& trials);

// Max over grid edges (wrap included) of ||psi_a(k + delta) - psi_a(k)||.
double gauge_smoothness(const SectionField& section);

struct WannierFunction {
  IVec cells;                 // supercell extent per axis
  int resolution = 0;         // real-space samples per cell axis
  double cell_volume = 1.0;
  std::vector<cplx> samples;  // row-major over (cells_j * resolution)
  std::vector<double> mass;   // per cell, row-major over cells
  double norm = 0.0;

  double overlap_shifted(const IVec& gamma) const;  // |<w, w(. - gamma)>|
};

// One Wannier function per frame column on the discrete torus of grid-size cells.
// resolution = 0 picks the alias-free 2N + 2.
std::vector<WannierFunction> inverse_bf(const SectionField& section, const Lattice& lat, int resolution = 0);

struct DecayFit {
  double rate = 0.0;   // b
  double r2 = 0.0;
  double rmin = 0.0;
  double rmax = 0.0;
  int shells = 0;
  bool capped = false;
};

struct ShellMass {
  double radius = 0.0;
  double mass = 0.0;
};

// Largest cell mass per shell k <= |gamma| / a < k + 1, with a the shortest lattice
// vector and gamma the minimal-image offset from the heaviest cell; the radius is that
// of the maximizing cell.
std::vector<ShellMass> shell_masses(const WannierFunction& w, const Lattice& lat);
// Shortest distance from the home cell to a wrapped image.
double supercell_half_width(const WannierFunction& w, const Lattice& lat);
// Fit of log mass against radius over shells with radius < max_radius and mass above the floor.
DecayFit decay_fit(const std::vector<ShellMass>& shells, double max_radius);
// max_radius <= 0 selects the supercell half-width; larger values are clipped to it.
DecayFit decay_fit(const WannierFunction& w, const Lattice& lat, double max_radius = 0.0);

}  // namespace magbloch

#endif
