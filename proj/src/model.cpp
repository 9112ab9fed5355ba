/*
 * model.cpp
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

#include "model.hpp"

#include <cmath>
#include <sstream>

namespace magbloch {

RVec Lattice::reciprocal(const IVec& n) const {
  RVec g = RVec::Zero(dim);
  for (int j = 0; j < dim; ++j) g += static_cast<double>(n[j]) * dual.col(j);
  return g;
}

RVec Lattice::reciprocal(const RVec& kappa) const { return dual * kappa; }

RVec Lattice::point(const RVec& reduced) const { return basis * reduced; }

double Lattice::face_area(int j, int l) const {
  RVec a = basis.col(j), b = basis.col(l);
  double g = a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2);
  return std::sqrt(std::max(0.0, g));
}

RMat dual_lattice(const RMat& basis) {
  if (basis.rows() != basis.cols() || basis.rows() < 1 || basis.rows() > kMaxDim)
    fail(ErrorKind::Config, "bad-dimension", "lattice basis must be d x d with 1 <= d <= 4");
  Eigen::FullPivLU<RMat> lu(basis);
  double scale = basis.cwiseAbs().maxCoeff();
  if (!lu.isInvertible() || std::abs(basis.determinant()) <= 1e-12 * std::pow(scale, basis.rows()))
    fail(ErrorKind::Config, "degenerate-lattice", "lattice basis vectors are linearly dependent");
  // basis^T dual = 2 pi I
  return kTwoPi * basis.transpose().inverse();
}

Lattice make_lattice(const RMat& basis) {
  Lattice lat;
  lat.dim = static_cast<int>(basis.rows());
  lat.dual = dual_lattice(basis);
  lat.basis = basis;
  lat.volume = std::abs(basis.determinant());
  return lat;
}

Lattice unit_lattice(int dim) { return make_lattice(RMat::Identity(dim, dim)); }

cplx FourierScalar::at(const IVec& n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void FourierScalar::set(const IVec& n, cplx value) {
  if (static_cast<int>(n.size()) != dim_)
    fail(ErrorKind::Config, "bad-index", "Fourier index has wrong dimension");
  if (value == cplx(0.0))
    coeffs_.erase(n);
  else
    coeffs_[n] = value;
}

void FourierScalar::add(const IVec& n, cplx value) { set(n, at(n) + value); }

int FourierScalar::cutoff() const {
  int c = 0;
  for (const auto& [n, v] : coeffs_)
    for (int x : n) c = std::max(c, std::abs(x));
  return c;
}

double FourierScalar::reality_defect() const {
  double worst = 0.0;
  for (const auto& [n, v] : coeffs_) {
    IVec m(n.size());
    for (std::size_t a = 0; a < n.size(); ++a) m[a] = -n[a];
    worst = std::max(worst, std::abs(at(m) - std::conj(v)));
  }
  return worst;
}

bool FourierScalar::is_even(double tol) const {
  for (const auto& [n, v] : coeffs_) {
    IVec m(n.size());
    for (std::size_t a = 0; a < n.size(); ++a) m[a] = -n[a];
    if (std::abs(at(m) - v) > tol) return false;
  }
  return true;
}

cplx FourierScalar::evaluate(const Lattice& lat, const RVec& x) const {
  cplx s = 0.0;
  for (const auto& [n, v] : coeffs_) s += v * std::exp(cplx(0.0, lat.reciprocal(n).dot(x)));
  return s;
}

void FourierScalar::prune(double tol) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= tol)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

int FourierVector::cutoff() const {
  int c = 0;
  for (const auto& f : comp) c = std::max(c, f.cutoff());
  return c;
}

bool FourierVector::zero() const {
  for (const auto& f : comp)
    if (!f.empty()) return false;
  return true;
}

RVec FourierVector::evaluate(const Lattice& lat, const RVec& x) const {
  RVec out(dim);
  for (int a = 0; a < dim; ++a) out[a] = comp[a].evaluate(lat, x).real();
  return out;
}

int FieldSpec::slot(int d, int j, int l) {
  // row-major upper triangle
  int s = 0;
  for (int r = 0; r < j; ++r) s += d - 1 - r;
  return s + (l - j - 1);
}

FourierScalar FieldSpec::component(int j, int l) const {
  if (j == l) return FourierScalar(dim);
  if (j < l) return upper[slot(dim, j, l)];
  FourierScalar neg(dim);
  for (const auto& [n, v] : upper[slot(dim, l, j)].coefficients()) neg.set(n, -v);
  return neg;
}

FourierScalar& FieldSpec::upper_ref(int j, int l) { return upper[slot(dim, j, l)]; }

cplx FieldSpec::coefficient(int j, int l, const IVec& n) const {
  if (j == l) return 0.0;
  if (j < l) return upper[slot(dim, j, l)].at(n);
  return -upper[slot(dim, l, j)].at(n);
}

int FieldSpec::cutoff() const {
  int c = 0;
  for (const auto& f : upper) c = std::max(c, f.cutoff());
  return c;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

double line_integral(const std::function<RVec(const RVec&)>& field, const RVec& x0, const RVec& x1,
                     int order, int panels) {
  std::vector<double> t, w;
  gauss_legendre(order, t, w);
  RVec delta = x1 - x0;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    for (int q = 0; q < order; ++q) {
      double s = (p + t[q]) / panels;
      sum += w[q] / panels * field(x0 + s * delta).dot(delta);
    }
  }
  return sum;
}

double line_integral_A(const Lattice& lat, const FourierVector& A, const RVec& x0, const RVec& x1) {
  if (A.zero()) return 0.0;
  RVec delta = x1 - x0;
  double span = 0.0;
  for (const auto& f : A.comp)
    for (const auto& [n, v] : f.coefficients()) span = std::max(span, std::abs(lat.reciprocal(n).dot(delta)));
  int panels = std::max(1, static_cast<int>(std::ceil(span / (0.5 * kPi))));
  int order = 2 * A.cutoff() + 4;
  return line_integral([&](const RVec& x) { return A.evaluate(lat, x); }, x0, x1, order, panels);
}

double line_integral_A_exact(const Lattice& lat, const FourierVector& A, const RVec& x0,
                             const RVec& x1) {
  RVec delta = x1 - x0;
  cplx sum = 0.0;
  for (int a = 0; a < A.dim; ++a) {
    for (const auto& [n, v] : A.comp[a].coefficients()) {
      RVec g = lat.reciprocal(n);
      double gd = g.dot(delta);
      cplx base = std::exp(cplx(0.0, g.dot(x0)));
      cplx avg = std::abs(gd) < 1e-300 ? cplx(1.0) : (std::exp(cplx(0.0, gd)) - 1.0) / cplx(0.0, gd);
      sum += v * delta[a] * base * avg;
    }
  }
  return sum.real();
}

FieldSpec field_from_potential(const Lattice& lat, const FourierVector& A) {
  const int d = lat.dim;
  FieldSpec B(d);
  for (int j = 0; j < d; ++j) {
    for (int l = j + 1; l < d; ++l) {
      FourierScalar& out = B.upper_ref(j, l);
      // i (G_j A_l - G_l A_j)
      for (const auto& [n, v] : A.comp[l].coefficients()) out.add(n, cplx(0.0, lat.reciprocal(n)[j]) * v);
      for (const auto& [n, v] : A.comp[j].coefficients()) out.add(n, -cplx(0.0, lat.reciprocal(n)[l]) * v);
      out.prune(0.0);
    }
  }
  return B;
}

double FluxReport::max_abs() const {
  double m = 0.0;
  for (double f : flux) m = std::max(m, std::abs(f));
  return m;
}

FluxReport zero_flux_check(const Lattice& lat, const FieldSpec& B, double rel_tol) {
  FluxReport rep;
  rep.tolerance = rel_tol;
  const int d = lat.dim;
  for (int j = 0; j < d; ++j) {
    for (int l = j + 1; l < d; ++l) {
      // flux of the 2-form B through the origin face spanned by e_j, e_l
      cplx phi = 0.0;
      for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
          double wedge = lat.basis(a, j) * lat.basis(b, l) - lat.basis(b, j) * lat.basis(a, l);
          if (wedge == 0.0) continue;
          for (const auto& [n, v] : B.upper[FieldSpec::slot(d, a, b)].coefficients())
            if (n[j] == 0 && n[l] == 0) phi += v * wedge;
        }
      }
      double area = lat.face_area(j, l);
      rep.planes.push_back({j, l});
      rep.flux.push_back(phi.real());
      rep.face_area.push_back(area);
      if (std::abs(phi.real()) > rel_tol * area) rep.pass = false;
    }
  }
  return rep;
}

double closedness_residual(const Lattice& lat, const FieldSpec& B) {
  const int d = lat.dim;
  if (d < 3) return 0.0;
  std::map<IVec, int> support;
  for (const auto& f : B.upper)
    for (const auto& [n, v] : f.coefficients()) support[n] = 1;
  double worst = 0.0;
  for (const auto& [n, unused] : support) {
    RVec g = lat.reciprocal(n);
    for (int j = 0; j < d; ++j)
      for (int m = j + 1; m < d; ++m)
        for (int l = m + 1; l < d; ++l) {
          cplx r = g[j] * B.coefficient(m, l, n) + g[m] * B.coefficient(l, j, n) + g[l] * B.coefficient(j, m, n);
          worst = std::max(worst, std::abs(r));
        }
  }
  return worst;
}

FourierVector potential_from_field(const Lattice& lat, const FieldSpec& B, double rel_tol) {
  const int d = lat.dim;
  double closed = closedness_residual(lat, B);
  if (closed > 1e-10) {
    std::ostringstream os;
    os << "field is not closed: Bianchi residual " << closed;
    fail(ErrorKind::Assumption, "not-a-field", os.str());
  }
  FluxReport flux = zero_flux_check(lat, B, rel_tol);
  if (!flux.pass) {
    std::ostringstream os;
    os << "field has nonzero flux " << flux.max_abs() << " through a lattice face";
    fail(ErrorKind::Assumption, "no-periodic-potential", os.str());
  }
  FourierVector A(d);
  std::map<IVec, int> support;
  for (const auto& f : B.upper)
    for (const auto& [n, v] : f.coefficients()) support[n] = 1;
  for (const auto& [n, unused] : support) {
    RVec g = lat.reciprocal(n);
    double g2 = g.squaredNorm();
    if (g2 == 0.0) continue;
    for (int l = 0; l < d; ++l) {
      cplx s = 0.0;
      for (int j = 0; j < d; ++j) s += g[j] * B.coefficient(j, l, n);
      cplx a = cplx(0.0, -1.0) * s / g2;
      if (a != cplx(0.0)) A.comp[l].set(n, a);
    }
  }
  return A;
}

double field_distance(const FieldSpec& a, const FieldSpec& b) {
  double worst = 0.0;
  for (std::size_t s = 0; s < a.upper.size(); ++s) {
    for (const auto& [n, v] : a.upper[s].coefficients()) worst = std::max(worst, std::abs(v - b.upper[s].at(n)));
    for (const auto& [n, v] : b.upper[s].coefficients()) worst = std::max(worst, std::abs(v - a.upper[s].at(n)));
  }
  return worst;
}

void validate_model(const LatticeModel& model) {
  const int d = model.lattice.dim;
  if (d < 1 || d > kMaxDim) fail(ErrorKind::Config, "bad-dimension", "dimension must be between 1 and 4");
  if (model.potential.dim() != d && !model.potential.empty())
    fail(ErrorKind::Config, "potential", "potential index dimension mismatch");
  if (model.potential.reality_defect() > 1e-12)
    fail(ErrorKind::Config, "potential", "potential coefficients are not conjugate-symmetric (V must be real)");
  if (model.vector_potential.dim != d)
    fail(ErrorKind::Config, "vector_potential", "vector_potential must have one component per dimension");
  for (int a = 0; a < d; ++a)
    if (model.vector_potential.comp[a].reality_defect() > 1e-12)
      fail(ErrorKind::Config, "vector_potential", "vector potential component " + std::to_string(a) + " is not real");
}

}  // namespace magbloch
