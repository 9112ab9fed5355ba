/*
 * bloch.hpp
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

#ifndef MAGBLOCH_BLOCH_HPP
#define MAGBLOCH_BLOCH_HPP

#include "model.hpp"

namespace magbloch {

// Plane waves exp(i G_n . y) with max_j |n_j| <= cutoff, lexicographic order.
class PlaneWaveBasis {
 public:
  PlaneWaveBasis() = default;
  PlaneWaveBasis(int dim, int cutoff);

  int dim() const { return dim_; }
  int cutoff() const { return cutoff_; }
  int size() const { return static_cast<int>(index_.size()); }
  const IVec& index(int pos) const { return index_[pos]; }
  // -1 when n lies outside the cube.
  int position(const IVec& n) const;
  // Position of -index(pos).
  int negated(int pos) const { return size() - 1 - pos; }

 private:
  int dim_ = 0;
  int cutoff_ = 0;
  int side_ = 1;
  std::vector<IVec> index_;
};

// Coefficient tables on the difference cube, reused across momenta.
class FiberAssembler {
 public:
  FiberAssembler(const LatticeModel& model, const PlaneWaveBasis& basis);
  CMat assemble(const RVec& kappa) const;
  const PlaneWaveBasis& basis() const { return basis_; }
  const LatticeModel& model() const { return model_; }

 private:
  int diff_slot(int p, int q) const;

  LatticeModel model_;
  PlaneWaveBasis basis_;
  int span_ = 0;
  std::vector<int> offset_;       // per-basis-position offset into the difference cube
  std::vector<cplx> vtab_;        // V(n) + (A.A)(n)
  std::vector<std::vector<cplx>> atab_;  // A_a(n)
  std::vector<RVec> gvec_;        // G for each basis position
};

CMat assemble_fiber(const LatticeModel& model, const PlaneWaveBasis& basis, const RVec& kappa);

struct BandSolution {
  RVec kappa;
  RVec energies;   // ascending
  CMat vectors;    // columns
};

// Lowest `count` eigenpairs (all when count < 0) with the degenerate tie-break applied.
BandSolution solve_bands(const CMat& H, const RVec& kappa, int count = -1);

// Phase and order convention within clusters closer than cluster_tol.
void apply_tie_break(RVec& energies, CMat& vectors, double cluster_tol = 1e-10);

struct BandTable {
  int dim = 0;
  int count = 0;
  std::vector<RVec> kappa;
  std::vector<RVec> energies;
};

BandTable band_path(const LatticeModel& model, const PlaneWaveBasis& basis, const std::vector<RVec>& path,
                    int count);

}  // namespace magbloch

#endif
