/*
 * model.hpp
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

#ifndef MAGBLOCH_MODEL_HPP
#define MAGBLOCH_MODEL_HPP

#include <map>
#include <optional>

#include "common.hpp"

namespace magbloch {

// Columns of `basis` are the lattice vectors, columns of `dual` the reciprocal
// ones, normalized so that basis^T dual = 2 pi I.
struct Lattice {
  int dim = 0;
  RMat basis;
  RMat dual;
  double volume = 0.0;

  // Cartesian reciprocal vector for an integer index vector.
  RVec reciprocal(const IVec& n) const;
  RVec reciprocal(const RVec& kappa) const;
  RVec point(const RVec& reduced) const;
  double face_area(int j, int l) const;
};

RMat dual_lattice(const RMat& basis);
Lattice make_lattice(const RMat& basis);
Lattice unit_lattice(int dim);

// Truncated Fourier series f(x) = sum_n c_n exp(i G_n . x).
class FourierScalar {
 public:
  FourierScalar() = default;
  explicit FourierScalar(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  cplx at(const IVec& n) const;
  void set(const IVec& n, cplx value);
  void add(const IVec& n, cplx value);
  const std::map<IVec, cplx>& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  // Largest |n_j| over stored coefficients; 0 when empty.
  int cutoff() const;
  // max_n |c_{-n} - conj(c_n)|
  double reality_defect() const;
  bool is_even(double tol = 1e-14) const;
  cplx evaluate(const Lattice& lat, const RVec& x) const;
  // Drops coefficients with modulus <= tol.
  void prune(double tol = 0.0);

 private:
  int dim_ = 0;
  std::map<IVec, cplx> coeffs_;
};

struct FourierVector {
  int dim = 0;
  std::vector<FourierScalar> comp;

  FourierVector() = default;
  explicit FourierVector(int d) : dim(d), comp(d, FourierScalar(d)) {}
  int cutoff() const;
  bool zero() const;
  RVec evaluate(const Lattice& lat, const RVec& x) const;
};

// Antisymmetric matrix of Fourier scalars, stored for j < l.
struct FieldSpec {
  int dim = 0;
  std::vector<FourierScalar> upper;

  FieldSpec() = default;
  explicit FieldSpec(int d) : dim(d), upper(d * (d - 1) / 2, FourierScalar(d)) {}
  static int slot(int d, int j, int l);
  // B_jl with the antisymmetric sign applied; j == l gives an empty series.
  FourierScalar component(int j, int l) const;
  FourierScalar& upper_ref(int j, int l);
  cplx coefficient(int j, int l, const IVec& n) const;
  int cutoff() const;
};

struct LatticeModel {
  std::string name;
  Lattice lattice;
  FourierScalar potential;
  FourierVector vector_potential;
  std::optional<FieldSpec> field;
};

// Straight segment circulation of A from x0 to x1 (Cartesian points), by
// composite Gauss-Legendre quadrature of order 2*cutoff+4 per panel.
double line_integral_A(const Lattice& lat, const FourierVector& A, const RVec& x0, const RVec& x1);
// Same rule for an arbitrary smooth vector field with a given per-panel order.
double line_integral(const std::function<RVec(const RVec&)>& field, const RVec& x0, const RVec& x1,
                     int order, int panels = 1);
// Closed-form circulation, used as a reference.
double line_integral_A_exact(const Lattice& lat, const FourierVector& A, const RVec& x0,
                             const RVec& x1);

// Nodes and weights on [0, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

FieldSpec field_from_potential(const Lattice& lat, const FourierVector& A);

struct FluxReport {
  std::vector<std::array<int, 2>> planes;
  std::vector<double> flux;
  std::vector<double> face_area;
  double tolerance = 1e-10;
  bool pass = true;
  double max_abs() const;
};

FluxReport zero_flux_check(const Lattice& lat, const FieldSpec& B, double rel_tol = 1e-10);

// max over n != 0 and j<m<l of |G_j B_ml + G_m B_lj + G_l B_jm|
double closedness_residual(const Lattice& lat, const FieldSpec& B);

FourierVector potential_from_field(const Lattice& lat, const FieldSpec& B, double rel_tol = 1e-10);

// Component-wise max coefficient difference.
double field_distance(const FieldSpec& a, const FieldSpec& b);

// Checks model invariants that every pipeline needs (dimension, reality).
void validate_model(const LatticeModel& model);

}  // namespace magbloch

#endif
