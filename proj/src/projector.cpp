/*
 * projector.cpp
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

#include "projector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace magbloch {

namespace {

double hermitian_norm(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

RVec KGrid::point(const IVec& idx) const {
  RVec k(dim());
  for (int j = 0; j < dim(); ++j) k[j] = static_cast<double>(idx[j]) / dims[j];
  return k;
}

IVec KGrid::negate(const IVec& idx) const {
  IVec out(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) out[j] = (dims[j] - idx[j]) % dims[j];
  return out;
}

RelevantSet RelevantSet::lowest(int m) {
  RelevantSet s;
  for (int i = 0; i < m; ++i) s.bands.push_back(i);
  return s;
}

void RelevantSet::validate(int basis_size) const {
  if (bands.empty()) fail(ErrorKind::Config, "bands", "relevant band set is empty");
  for (std::size_t i = 0; i < bands.size(); ++i) {
    if (bands[i] < 0 || bands[i] >= basis_size)
      fail(ErrorKind::Config, "bands", "band index outside the plane-wave basis");
    if (i > 0 && bands[i] <= bands[i - 1]) fail(ErrorKind::Config, "bands", "band indices must be strictly increasing");
  }
}

GapReport gap_report(const KGrid& grid, const std::vector<RVec>& bands, const RelevantSet& I, int basis_size,
                     double tol) {
  GapReport rep;
  rep.tolerance = tol;
  std::vector<char> member(basis_size, 0);
  for (int b : I.bands) member[b] = 1;
  for (std::size_t f = 0; f < bands.size(); ++f) {
    const RVec& e = bands[f];
    for (Eigen::Index i = 0; i + 1 < e.size(); ++i) {
      if (member[i] == member[i + 1]) continue;
      double g = e[i + 1] - e[i];
      if (g < rep.gap) {
        rep.gap = g;
        rep.where = grid.point(f);
      }
    }
  }
  rep.pass = rep.gap > tol;
  return rep;
}

CMat ProjectorField::projector(std::size_t flat) const { return frames[flat] * frames[flat].adjoint(); }

CMat embedding_shift(EmbeddingKind kind, const PlaneWaveBasis& basis, const CMat& coeffs, const IVec& wraps) {
  if (kind == EmbeddingKind::Identity) return coeffs;
  bool none = std::all_of(wraps.begin(), wraps.end(), [](int w) { return w == 0; });
  if (none) return coeffs;
  CMat out = CMat::Zero(coeffs.rows(), coeffs.cols());
  IVec n(basis.dim());
  for (int p = 0; p < basis.size(); ++p) {
    const IVec& src = basis.index(p);
    for (int j = 0; j < basis.dim(); ++j) n[j] = src[j] + wraps[j];
    int q = basis.position(n);
    if (q >= 0) out.row(p) = coeffs.row(q);
  }
  return out;
}

CMat ProjectorField::shift(const CMat& coeffs, const IVec& wraps) const {
  return embedding_shift(embedding, basis, coeffs, wraps);
}

CMat ProjectorField::frame_at(const IVec& raw) const {
  IVec base(raw.size()), wraps(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    wraps[j] = floor_div(raw[j], grid.dims[j]);
    base[j] = raw[j] - wraps[j] * grid.dims[j];
  }
  return shift(frames[flat_index(base, grid.dims)], wraps);
}

CMat ProjectorField::neighbour(const IVec& idx, int axis, int step) const {
  IVec raw = idx;
  raw[axis] += step;
  return frame_at(raw);
}

ProjectorField build_projector_field(const LatticeModel& model, const PlaneWaveBasis& basis, const KGrid& grid,
                                     const RelevantSet& I, double gap_tol) {
  I.validate(basis.size());
  ProjectorField field;
  field.grid = grid;
  field.M = basis.size();
  field.m = I.rank();
  field.embedding = EmbeddingKind::PlaneWave;
  field.basis = basis;
  const std::size_t n = grid.size();
  field.frames.resize(n);
  field.bands.resize(n);
  const int count = std::min(basis.size(), I.highest() + 2);
  FiberAssembler fa(model, basis);
  parallel_for(n, [&](std::size_t f) {
    RVec k = grid.point(f);
    BandSolution sol = solve_bands(fa.assemble(k), k, count);
    CMat frame(field.M, field.m);
    for (int a = 0; a < field.m; ++a) frame.col(a) = sol.vectors.col(I.bands[a]);
    field.frames[f] = std::move(frame);
    field.bands[f] = sol.energies;
  });
  field.gap = gap_report(grid, field.bands, I, basis.size(), gap_tol);
  if (!field.gap.pass) {
    std::ostringstream os;
    os << "local spectral gap " << field.gap.gap << " <= tolerance " << gap_tol << " at kappa = ("
       << field.gap.where.transpose() << ")";
    fail(ErrorKind::Assumption, "gap-violation", os.str());
  }
  return field;
}

ProjectorField projector_field_from(const KGrid& grid, const std::function<CMat(const RVec&)>& frame_of) {
  ProjectorField field;
  field.grid = grid;
  field.embedding = EmbeddingKind::Identity;
  field.frames.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t f) { field.frames[f] = frame_of(grid.point(f)); });
  field.M = static_cast<int>(field.frames[0].rows());
  field.m = static_cast<int>(field.frames[0].cols());
  return field;
}

ProjectorInvariants projector_invariants(const ProjectorField& field, bool materialize) {
  const std::size_t n = field.frames.size();
  std::vector<ProjectorInvariants> per(n);
  parallel_for(n, [&](std::size_t f) {
    const CMat& F = field.frames[f];
    ProjectorInvariants& r = per[f];
    if (materialize) {
      CMat P = F * F.adjoint();
      CMat sq = P * P - P;
      CMat skew = P - P.adjoint();
      r.idempotency = hermitian_norm(0.5 * (sq + sq.adjoint()));
      r.hermiticity = skew.cwiseAbs().maxCoeff();
      r.trace = std::abs(P.trace() - static_cast<double>(field.m));
    } else {
      CMat S = F.adjoint() * F;
      Eigen::SelfAdjointEigenSolver<CMat> es(S, Eigen::EigenvaluesOnly);
      const RVec& s = es.eigenvalues();
      for (Eigen::Index a = 0; a < s.size(); ++a) r.idempotency = std::max(r.idempotency, std::abs(s[a] * (s[a] - 1.0)));
      r.trace = std::abs(s.sum() - static_cast<double>(field.m));
    }
  });
  ProjectorInvariants out;
  for (const auto& r : per) {
    out.idempotency = std::max(out.idempotency, r.idempotency);
    out.hermiticity = std::max(out.hermiticity, r.hermiticity);
    out.trace = std::max(out.trace, r.trace);
  }
  return out;
}

CMat boundary_embedding(const PlaneWaveBasis& basis, int axis) {
  const int M = basis.size();
  CMat V = CMat::Zero(M, M);
  for (int p = 0; p < M; ++p) {
    IVec n = basis.index(p);
    n[axis] += 1;
    int q = basis.position(n);
    if (q >= 0) V(p, q) = 1.0;
  }
  return V;
}

EmbeddingResidual boundary_embedding_residual(const LatticeModel& model, const PlaneWaveBasis& basis,
                                              const KGrid& grid, const RelevantSet& I, int axis) {
  EmbeddingResidual out;
  out.axis = axis;
  IVec face = grid.dims;
  face[axis] = 1;
  const std::size_t n = grid_volume(face);
  const int count = std::min(basis.size(), I.highest() + 2);
  FiberAssembler fa(model, basis);
  ProjectorField shape;
  shape.embedding = EmbeddingKind::PlaneWave;
  shape.basis = basis;
  std::vector<double> res(n, 0.0);
  parallel_for(n, [&](std::size_t f) {
    RVec k = grid.point(unflat_index(f, face));
    RVec k1 = k;
    k1[axis] += 1.0;
    BandSolution a = solve_bands(fa.assemble(k), k, count);
    BandSolution b = solve_bands(fa.assemble(k1), k1, count);
    CMat fa_(basis.size(), I.rank()), fb(basis.size(), I.rank());
    for (int c = 0; c < I.rank(); ++c) {
      fa_.col(c) = a.vectors.col(I.bands[c]);
      fb.col(c) = b.vectors.col(I.bands[c]);
    }
    IVec w(grid.dim(), 0);
    w[axis] = 1;
    res[f] = projector_distance(shape.shift(fa_, w), fb);
  });
  for (double r : res) out.residual = std::max(out.residual, r);
  return out;
}

double projector_continuity(const ProjectorField& field) {
  const std::size_t n = field.frames.size();
  std::vector<double> worst(n, 0.0);
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    for (int a = 0; a < field.dim(); ++a)
      worst[f] = std::max(worst[f], projector_distance(field.frames[f], field.neighbour(idx, a, 1)));
  });
  return *std::max_element(worst.begin(), worst.end());
}

std::vector<CMat> projector_derivative(const ProjectorField& field, int axis) {
  const std::size_t n = field.frames.size();
  std::vector<CMat> out(n);
  const double inv = field.grid.dims[axis] / 2.0;
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    CMat up = field.neighbour(idx, axis, 1), dn = field.neighbour(idx, axis, -1);
    CMat d = (up * up.adjoint() - dn * dn.adjoint()) * inv;
    out[f] = 0.5 * (d + d.adjoint());
  });
  return out;
}

std::vector<CMat> q_tilde(const ProjectorField& field, int i, int j) {
  std::vector<CMat> di = projector_derivative(field, i);
  std::vector<CMat> dj = projector_derivative(field, j);
  std::vector<CMat> out(di.size());
  parallel_for(di.size(), [&](std::size_t f) {
    CMat P = field.projector(f);
    out[f] = P * (di[f] * dj[f] - dj[f] * di[f]) * P;
  });
  return out;
}

std::vector<CMat> frame_derivative(const ProjectorField& field, int axis) {
  const std::size_t n = field.frames.size();
  std::vector<CMat> out(n);
  const double inv = field.grid.dims[axis] / 2.0;
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    const CMat& F = field.frames[f];
    CMat up = field.neighbour(idx, axis, 1), dn = field.neighbour(idx, axis, -1);
    out[f] = (up * (up.adjoint() * F) - dn * (dn.adjoint() * F)) * inv;
  });
  return out;
}

std::vector<cplx> q_trace(const ProjectorField& field, int i, int j) {
  std::vector<CMat> xi = frame_derivative(field, i);
  std::vector<CMat> xj = frame_derivative(field, j);
  std::vector<cplx> out(xi.size());
  for (std::size_t f = 0; f < xi.size(); ++f) {
    CMat q = xi[f].adjoint() * xj[f] - xj[f].adjoint() * xi[f];
    out[f] = q.trace();
  }
  return out;
}

std::vector<cplx> w_trace(const ProjectorField& field) {
  if (field.dim() != 4) fail(ErrorKind::Config, "dimension", "the W trace is defined for d = 4 only");
  std::vector<std::vector<CMat>> x(4);
  for (int a = 0; a < 4; ++a) x[a] = frame_derivative(field, a);
  std::vector<cplx> out(field.frames.size());
  parallel_for(out.size(), [&](std::size_t f) {
    auto q = [&](int i, int j) -> CMat { return x[i][f].adjoint() * x[j][f] - x[j][f].adjoint() * x[i][f]; };
    CMat w = q(0, 1) * q(2, 3) - q(0, 2) * q(1, 3) + q(0, 3) * q(1, 2);
    out[f] = w.trace();
  });
  return out;
}

std::vector<cplx> w_trace_full(const ProjectorField& field) {
  if (field.dim() != 4) fail(ErrorKind::Config, "dimension", "the W trace is defined for d = 4 only");
  std::vector<std::vector<CMat>> d(4);
  for (int a = 0; a < 4; ++a) d[a] = projector_derivative(field, a);
  std::vector<cplx> out(field.frames.size());
  parallel_for(out.size(), [&](std::size_t f) {
    CMat P = field.projector(f);
    auto q = [&](int i, int j) -> CMat { return P * (d[i][f] * d[j][f] - d[j][f] * d[i][f]) * P; };
    CMat w = q(0, 1) * q(2, 3) - q(0, 2) * q(1, 3) + q(0, 3) * q(1, 2);
    out[f] = w.trace();
  });
  return out;
}

}  // namespace magbloch
