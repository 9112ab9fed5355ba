/*
 * bloch.cpp
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

#include "bloch.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <lapacke.h>

namespace magbloch {

PlaneWaveBasis::PlaneWaveBasis(int dim, int cutoff) : dim_(dim), cutoff_(cutoff), side_(2 * cutoff + 1) {
  if (cutoff < 1) fail(ErrorKind::Config, "cutoff", "plane-wave cutoff must be >= 1");
  IVec dims(dim, side_);
  std::size_t total = grid_volume(dims);
  index_.reserve(total);
  for (std::size_t f = 0; f < total; ++f) {
    IVec n = unflat_index(f, dims);
    for (int& x : n) x -= cutoff;
    index_.push_back(n);
  }
}

int PlaneWaveBasis::position(const IVec& n) const {
  int pos = 0;
  for (int j = 0; j < dim_; ++j) {
    if (n[j] < -cutoff_ || n[j] > cutoff_) return -1;
    pos = pos * side_ + (n[j] + cutoff_);
  }
  return pos;
}

FiberAssembler::FiberAssembler(const LatticeModel& model, const PlaneWaveBasis& basis)
    : model_(model), basis_(basis) {
  const int d = basis.dim();
  const int N = basis.cutoff();
  if (model.lattice.dim != d) fail(ErrorKind::Config, "dimension", "basis and model dimensions differ");
  int vc = model.potential.cutoff(), ac = model.vector_potential.cutoff();
  if (vc > 2 * N || ac > 2 * N) {
    std::ostringstream os;
    os << "potential cutoff " << std::max(vc, ac) << " exceeds 2N = " << 2 * N;
    fail(ErrorKind::Config, "cutoff-too-small", os.str());
  }
  span_ = 4 * N + 1;
  IVec dims(d, span_);
  std::size_t total = grid_volume(dims);
  vtab_.assign(total, 0.0);
  atab_.assign(d, std::vector<cplx>(total, 0.0));
  auto slot_of = [&](const IVec& n) -> long {
    long s = 0;
    for (int j = 0; j < d; ++j) {
      if (n[j] < -2 * N || n[j] > 2 * N) return -1;
      s = s * span_ + (n[j] + 2 * N);
    }
    return s;
  };
  for (const auto& [n, v] : model.potential.coefficients()) vtab_[slot_of(n)] += v;
  const auto& A = model.vector_potential;
  for (int a = 0; a < d; ++a) {
    for (const auto& [n, v] : A.comp[a].coefficients()) atab_[a][slot_of(n)] += v;
    // |A|^2 by coefficient convolution; terms beyond the difference cube never enter the matrix
    for (const auto& [n1, v1] : A.comp[a].coefficients())
      for (const auto& [n2, v2] : A.comp[a].coefficients()) {
        IVec s(d);
        for (int j = 0; j < d; ++j) s[j] = n1[j] + n2[j];
        long slot = slot_of(s);
        if (slot >= 0) vtab_[slot] += v1 * v2;
      }
  }
  offset_.resize(basis.size());
  gvec_.resize(basis.size());
  for (int p = 0; p < basis.size(); ++p) {
    int o = 0;
    for (int j = 0; j < d; ++j) o = o * span_ + basis.index(p)[j];
    offset_[p] = o;
    gvec_[p] = model.lattice.reciprocal(basis.index(p));
  }
}

int FiberAssembler::diff_slot(int p, int q) const {
  int center = 0;
  for (int j = 0; j < basis_.dim(); ++j) center = center * span_ + 2 * basis_.cutoff();
  return offset_[p] - offset_[q] + center;
}

CMat FiberAssembler::assemble(const RVec& kappa) const {
  const int M = basis_.size();
  const int d = basis_.dim();
  RVec k = model_.lattice.reciprocal(kappa);
  CMat H(M, M);
  bool magnetic = !model_.vector_potential.zero();
  for (int p = 0; p < M; ++p) {
    H(p, p) = (k + gvec_[p]).squaredNorm() + vtab_[diff_slot(p, p)];
    if (magnetic) {
      RVec w = 2.0 * (k + gvec_[p]);
      for (int a = 0; a < d; ++a) H(p, p) -= atab_[a][diff_slot(p, p)] * w[a];
    }
    for (int q = p + 1; q < M; ++q) {
      int s = diff_slot(p, q);
      cplx h = vtab_[s];
      if (magnetic) {
        RVec w = 2.0 * k + gvec_[p] + gvec_[q];
        for (int a = 0; a < d; ++a) h -= atab_[a][s] * w[a];
      }
      H(p, q) = h;
      H(q, p) = std::conj(h);
    }
    H(p, p) = H(p, p).real();
  }
  return H;
}

CMat assemble_fiber(const LatticeModel& model, const PlaneWaveBasis& basis, const RVec& kappa) {
  return FiberAssembler(model, basis).assemble(kappa);
}

void apply_tie_break(RVec& energies, CMat& vectors, double cluster_tol) {
  const Eigen::Index n = energies.size();
  std::vector<double> peak(n);
  std::vector<Eigen::Index> peak_at(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      double a = std::abs(vectors(r, c));
      // first index wins among (numerically) equal maxima
      if (a > best * (1.0 + 1e-12) + 1e-300) {
        best = a;
        arg = r;
      }
    }
    cplx z = vectors(arg, c);
    if (std::abs(z) > 0.0) vectors.col(c) *= std::conj(z) / std::abs(z);
    vectors(arg, c) = std::abs(vectors(arg, c));
    peak[c] = best;
    peak_at[c] = arg;
  }
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && energies[stop] - energies[stop - 1] < cluster_tol) ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Index> order(stop - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (std::abs(peak[a] - peak[b]) > 1e-12) return peak[a] > peak[b];
        return peak_at[a] < peak_at[b];
      });
      CMat block(vectors.rows(), stop - start);
      RVec ev(stop - start);
      for (std::size_t i = 0; i < order.size(); ++i) {
        block.col(i) = vectors.col(order[i]);
        ev[i] = energies[order[i]];
      }
      vectors.middleCols(start, stop - start) = block;
      energies.segment(start, stop - start) = ev;
    }
    start = stop;
  }
}

BandSolution solve_bands(const CMat& H, const RVec& kappa, int count) {
  const int M = static_cast<int>(H.rows());
  if (count < 0 || count > M) count = M;
  BandSolution sol;
  sol.kappa = kappa;
  CMat a = H;
  std::vector<double> w(M);
  CMat z(M, std::max(count, 1));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(M));
  lapack_int found = 0;
  lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', count == M ? 'A' : 'I', 'U', M,
                                   reinterpret_cast<lapack_complex_double*>(a.data()), M, 0.0, 0.0, 1,
                                   count, 0.0, &found, w.data(),
                                   reinterpret_cast<lapack_complex_double*>(z.data()), M, support.data());
  if (info != 0 || found != count) {
    std::ostringstream os;
    os << "eigensolver failed (info " << info << ") at kappa = (" << kappa.transpose() << ")";
    fail(ErrorKind::Numerical, "eigensolver", os.str());
  }
  sol.energies = Eigen::Map<RVec>(w.data(), count);
  sol.vectors = z.leftCols(count);
  apply_tie_break(sol.energies, sol.vectors);
  return sol;
}

BandTable band_path(const LatticeModel& model, const PlaneWaveBasis& basis, const std::vector<RVec>& path,
                    int count) {
  if (count > basis.size()) fail(ErrorKind::Config, "count", "band count exceeds basis size");
  BandTable t;
  t.dim = basis.dim();
  t.count = count;
  t.kappa = path;
  t.energies.resize(path.size());
  FiberAssembler fa(model, basis);
  parallel_for(path.size(), [&](std::size_t i) {
    t.energies[i] = solve_bands(fa.assemble(path[i]), path[i], count).energies;
  });
  return t;
}

}  // namespace magbloch
