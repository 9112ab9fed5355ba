/*
 * projector.hpp
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

#ifndef MAGBLOCH_PROJECTOR_HPP
#define MAGBLOCH_PROJECTOR_HPP

#include <limits>

#include "bloch.hpp"

namespace magbloch {

// Uniform grid kappa(i) = i / N_j on the reduced torus.
struct KGrid {
  IVec dims;

  KGrid() = default;
  explicit KGrid(IVec d) : dims(std::move(d)) {}
  int dim() const { return static_cast<int>(dims.size()); }
  std::size_t size() const { return grid_volume(dims); }
  RVec point(const IVec& idx) const;
  RVec point(std::size_t flat) const { return point(unflat_index(flat, dims)); }
  // Index of -kappa after wrapping into [0, N).
  IVec negate(const IVec& idx) const;
};

// Zero-based band indices, sorted ascending.
struct RelevantSet {
  std::vector<int> bands;

  static RelevantSet lowest(int m);
  int rank() const { return static_cast<int>(bands.size()); }
  int highest() const { return bands.empty() ? -1 : bands.back(); }
  void validate(int basis_size) const;
};

struct GapReport {
  double gap = std::numeric_limits<double>::infinity();
  RVec where;
  double tolerance = 1e-6;
  bool pass = true;
};

// Eigenvalues per grid point (at least highest()+2 of them, or all).
GapReport gap_report(const KGrid& grid, const std::vector<RVec>& bands, const RelevantSet& I, int basis_size,
                     double tol = 1e-6);

enum class EmbeddingKind { PlaneWave, Identity };

// Composed boundary shift (S_w c)_n = c_{n + w}; rows leaving the cube are dropped.
CMat embedding_shift(EmbeddingKind kind, const PlaneWaveBasis& basis, const CMat& coeffs, const IVec& wraps);

// Relevant-band projectors stored as orthonormal M x m frames, P = F F^dagger.
struct ProjectorField {
  KGrid grid;
  int M = 0;
  int m = 0;
  EmbeddingKind embedding = EmbeddingKind::Identity;
  PlaneWaveBasis basis;        // only for PlaneWave embeddings
  std::vector<CMat> frames;
  std::vector<RVec> bands;     // computed eigenvalues per point (may be empty)
  GapReport gap;

  int dim() const { return grid.dim(); }
  CMat projector(std::size_t flat) const;
  // Applies the composed boundary shift: (S_w c)_n = c_{n + w}, rows leaving the cube dropped.
  CMat shift(const CMat& coeffs, const IVec& wraps) const;
  // Frame at an arbitrary integer index, wrapping through the embedding.
  CMat frame_at(const IVec& raw) const;
  // Frame at the neighbour idx + step * e_axis.
  CMat neighbour(const IVec& idx, int axis, int step) const;
};

// Builds the field from the lowest highest()+2 eigenpairs at each grid point.
// Refuses with an assumption error when the gap check fails.
ProjectorField build_projector_field(const LatticeModel& model, const PlaneWaveBasis& basis, const KGrid& grid,
                                     const RelevantSet& I, double gap_tol = 1e-6);

// Field from an arbitrary frame generator; identity boundary embedding.
ProjectorField projector_field_from(const KGrid& grid, const std::function<CMat(const RVec&)>& frame_of);

struct ProjectorInvariants {
  double idempotency = 0.0;
  double hermiticity = 0.0;
  double trace = 0.0;
  bool pass(double tol = 1e-10) const { return idempotency <= tol && hermiticity <= 1e-12 && trace <= tol; }
};

// Per-point invariants maximized over the grid; `materialize` forms full M x M matrices.
ProjectorInvariants projector_invariants(const ProjectorField& field, bool materialize = false);

// Boundary shift V_axis as an explicit M x M matrix.
CMat boundary_embedding(const PlaneWaveBasis& basis, int axis);

struct EmbeddingResidual {
  int axis = 0;
  double residual = 0.0;
};

// max over face points of ||P(kappa + e_axis) - V P(kappa) V^dagger||, with P(kappa + e_axis) re-solved.
EmbeddingResidual boundary_embedding_residual(const LatticeModel& model, const PlaneWaveBasis& basis,
                                              const KGrid& grid, const RelevantSet& I, int axis);

// Max operator-norm change of P between grid neighbours (wrap included).
double projector_continuity(const ProjectorField& field);

// Central difference of P along an axis, full matrices, Hermitian-symmetrized.
std::vector<CMat> projector_derivative(const ProjectorField& field, int axis);

// Q_ij = P [dP_i, dP_j] P as full matrices.
std::vector<CMat> q_tilde(const ProjectorField& field, int i, int j);

// dP_axis applied to the frame at each point (M x m), the reduced building block.
std::vector<CMat> frame_derivative(const ProjectorField& field, int axis);

// Tr Q_ij per point through the frame-reduced m x m form.
std::vector<cplx> q_trace(const ProjectorField& field, int i, int j);

// Tr (Q12 Q34 - Q13 Q24 + Q14 Q23) per point (d = 4).
std::vector<cplx> w_trace(const ProjectorField& field);
// Same, built from full matrices (cross-check route).
std::vector<cplx> w_trace_full(const ProjectorField& field);

}  // namespace magbloch

#endif
