/*
 * symmetry.hpp
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

#ifndef MAGBLOCH_SYMMETRY_HPP
#define MAGBLOCH_SYMMETRY_HPP

#include "projector.hpp"

namespace magbloch {

// Phase factor used by the magnetic time reversal: exp(+2i int_[0,y] A).
constexpr double kTimeReversalFactor = 2.0;

// Samples exp(i c g(y)) on the collocation grid y = basis * (i / R).
// g is int_[0,y] A, or for the parity variant int_[0,y] (A(.) + A(-.)).
struct PhaseFunction {
  int dim = 0;
  int resolution = 0;
  double factor = 0.0;
  std::vector<cplx> samples;   // row-major over R^d
  std::vector<cplx> spectrum;  // discrete Fourier coefficients of the samples
  double max_modulus_defect() const;
  cplx coefficient(const IVec& n) const;
};

PhaseFunction phase_grid(const Lattice& lat, const FourierVector& A, double factor, int resolution,
                         bool symmetrized = false);

// Fiber operator c -> U c (conjugate = false) or U conj(c) (conjugate = true),
// with U(n, n') = phase_hat(n + n') on the truncated basis.
struct FiberSymmetry {
  PhaseFunction phase;
  bool conjugate = true;
  PlaneWaveBasis basis;
  CMat U;

  CVec apply(const CVec& v) const;
  CMat apply(const CMat& frame) const;
};

int default_resolution(int cutoff);

// Magnetic time reversal with factor +2.
FiberSymmetry make_time_reversal(const LatticeModel& model, const PlaneWaveBasis& basis, int resolution = 0,
                                 double factor = kTimeReversalFactor);
// Magnetic parity (reflection y -> -y times the symmetrized phase); refuses odd potentials.
FiberSymmetry make_parity(const LatticeModel& model, const PlaneWaveBasis& basis, int resolution = 0);

// max |J J v - v| over the columns of `vectors`.
double involution_defect(const FiberSymmetry& op, const CMat& vectors);

struct SymmetryResidual {
  double residual = 0.0;
  RVec where;
};

// max over the grid of || S P(kappa) S^-1 - P(-kappa) ||_2.
SymmetryResidual symmetry_projector_residual(const ProjectorField& field, const FiberSymmetry& op);
SymmetryResidual trs_projector_residual(const ProjectorField& field, const FiberSymmetry& J);
SymmetryResidual parity_projector_residual(const ProjectorField& field, const FiberSymmetry& Pi);

// max_n |E_n(kappa) - E_n(-kappa)| over stored bands.
double spectrum_symmetry(const ProjectorField& field);

// e^{-i Phi} = lambda_{g1}(x) lambda_{g2}(x - g1) / lambda_{g1+g2}(x) with
// lambda_g(x) = exp(-i int_[g, x+g] A + i int_[0, x] A).
struct CocycleSample {
  RVec x;
  cplx factor;   // e^{-i Phi}
  double flux;   // Phi
};

using Circulation = std::function<double(const RVec&, const RVec&)>;

std::vector<CocycleSample> magnetic_translation_cocycle(const Circulation& line, const RVec& g1, const RVec& g2,
                                                        const std::vector<RVec>& xs);
std::vector<CocycleSample> magnetic_translation_cocycle(const Lattice& lat, const FourierVector& A, const RVec& g1,
                                                        const RVec& g2, const std::vector<RVec>& xs);

// Signed area of the triangle (a, b, c) in two dimensions.
double triangle_area(const RVec& a, const RVec& b, const RVec& c);

struct SymmetryRow {
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int cutoff = 0;
};

}  // namespace magbloch

#endif
