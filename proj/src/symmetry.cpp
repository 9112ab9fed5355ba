/*
 * symmetry.cpp
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

#include "symmetry.hpp"

#include <cmath>

#include "fft.hpp"

namespace magbloch {

double PhaseFunction::max_modulus_defect() const {
  double worst = 0.0;
  for (cplx z : samples) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  return worst;
}

cplx PhaseFunction::coefficient(const IVec& n) const {
  std::size_t f = 0;
  for (int j = 0; j < dim; ++j) f = f * resolution + static_cast<std::size_t>(((n[j] % resolution) + resolution) % resolution);
  return spectrum[f];
}

PhaseFunction phase_grid(const Lattice& lat, const FourierVector& A, double factor, int resolution, bool symmetrized) {
  PhaseFunction ph;
  ph.dim = lat.dim;
  ph.resolution = resolution;
  ph.factor = factor;
  IVec dims(lat.dim, resolution);
  const std::size_t total = grid_volume(dims);
  ph.samples.resize(total);
  const RVec origin = RVec::Zero(lat.dim);
  parallel_for(total, [&](std::size_t f) {
    IVec idx = unflat_index(f, dims);
    RVec red(lat.dim);
    for (int j = 0; j < lat.dim; ++j) red[j] = static_cast<double>(idx[j]) / resolution;
    RVec y = lat.point(red);
    double g = line_integral_A(lat, A, origin, y);
    if (symmetrized) g -= line_integral_A(lat, A, origin, -y);
    ph.samples[f] = std::polar(1.0, factor * g);
  });
  ph.spectrum = dft(ph.samples, dims, -1);
  const double scale = 1.0 / static_cast<double>(total);
  for (cplx& z : ph.spectrum) z *= scale;
  return ph;
}

int default_resolution(int cutoff) { return 8 * cutoff + 4; }

namespace {

FiberSymmetry assemble_symmetry(PhaseFunction phase, bool conjugate, const PlaneWaveBasis& basis) {
  FiberSymmetry op;
  op.phase = std::move(phase);
  op.conjugate = conjugate;
  op.basis = basis;
  const int M = basis.size();
  op.U.resize(M, M);
  IVec s(basis.dim());
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) {
      for (int j = 0; j < basis.dim(); ++j) s[j] = basis.index(p)[j] + basis.index(q)[j];
      op.U(p, q) = op.phase.coefficient(s);
    }
  return op;
}

}  // namespace

FiberSymmetry make_time_reversal(const LatticeModel& model, const PlaneWaveBasis& basis, int resolution,
                                 double factor) {
  if (resolution <= 0) resolution = default_resolution(basis.cutoff());
  if (resolution < 4 * basis.cutoff() + 1)
    fail(ErrorKind::Config, "resolution", "collocation resolution must be at least 4N+1");
  return assemble_symmetry(phase_grid(model.lattice, model.vector_potential, factor, resolution), true, basis);
}

FiberSymmetry make_parity(const LatticeModel& model, const PlaneWaveBasis& basis, int resolution) {
  if (!model.potential.is_even(1e-14))
    fail(ErrorKind::Assumption, "parity-inapplicable", "potential is not even under y -> -y");
  if (resolution <= 0) resolution = default_resolution(basis.cutoff());
  if (resolution < 4 * basis.cutoff() + 1)
    fail(ErrorKind::Config, "resolution", "collocation resolution must be at least 4N+1");
  return assemble_symmetry(phase_grid(model.lattice, model.vector_potential, 1.0, resolution, true), false, basis);
}

CVec FiberSymmetry::apply(const CVec& v) const { return conjugate ? CVec(U * v.conjugate()) : CVec(U * v); }

CMat FiberSymmetry::apply(const CMat& frame) const { return conjugate ? CMat(U * frame.conjugate()) : CMat(U * frame); }

double involution_defect(const FiberSymmetry& op, const CMat& vectors) {
  CMat twice = op.apply(op.apply(vectors));
  return (twice - vectors).colwise().norm().maxCoeff();
}

SymmetryResidual symmetry_projector_residual(const ProjectorField& field, const FiberSymmetry& op) {
  const std::size_t n = field.frames.size();
  std::vector<double> res(n, 0.0);
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    IVec neg(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) neg[j] = -idx[j];
    res[f] = projector_distance(op.apply(field.frames[f]), field.frame_at(neg));
  });
  SymmetryResidual out;
  for (std::size_t f = 0; f < n; ++f)
    if (f == 0 || res[f] > out.residual) {
      out.residual = res[f];
      out.where = field.grid.point(f);
    }
  return out;
}

SymmetryResidual trs_projector_residual(const ProjectorField& field, const FiberSymmetry& J) {
  return symmetry_projector_residual(field, J);
}

SymmetryResidual parity_projector_residual(const ProjectorField& field, const FiberSymmetry& Pi) {
  return symmetry_projector_residual(field, Pi);
}

double spectrum_symmetry(const ProjectorField& field) {
  double worst = 0.0;
  for (std::size_t f = 0; f < field.bands.size(); ++f) {
    IVec idx = unflat_index(f, field.grid.dims);
    std::size_t g = flat_index(field.grid.negate(idx), field.grid.dims);
    const RVec& a = field.bands[f];
    const RVec& b = field.bands[g];
    // the highest stored value may belong to a cluster split by the partial solve; skip it
    Eigen::Index k = std::min(a.size(), b.size()) - 1;
    if (k <= 0) k = std::min(a.size(), b.size());
    worst = std::max(worst, (a.head(k) - b.head(k)).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<CocycleSample> magnetic_translation_cocycle(const Circulation& line, const RVec& g1, const RVec& g2,
                                                        const std::vector<RVec>& xs) {
  const RVec origin = RVec::Zero(g1.size());
  auto lambda_phase = [&](const RVec& g, const RVec& x) { return -line(g, x + g) + line(origin, x); };
  std::vector<CocycleSample> out;
  out.reserve(xs.size());
  for (const RVec& x : xs) {
    double total = lambda_phase(g1, x) + lambda_phase(g2, x - g1) - lambda_phase(g1 + g2, x);
    CocycleSample s;
    s.x = x;
    s.factor = std::polar(1.0, total);
    s.flux = -total;
    out.push_back(s);
  }
  return out;
}

std::vector<CocycleSample> magnetic_translation_cocycle(const Lattice& lat, const FourierVector& A, const RVec& g1,
                                                        const RVec& g2, const std::vector<RVec>& xs) {
  return magnetic_translation_cocycle(
      [&](const RVec& a, const RVec& b) { return line_integral_A(lat, A, a, b); }, g1, g2, xs);
}

double triangle_area(const RVec& a, const RVec& b, const RVec& c) {
  RVec u = b - a, v = c - a;
  return 0.5 * (u[0] * v[1] - u[1] * v[0]);
}

}  // namespace magbloch
