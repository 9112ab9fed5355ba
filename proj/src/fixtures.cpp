/*
 * fixtures.cpp
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

#include "fixtures.hpp"

#include <cmath>

namespace magbloch {

namespace {

IVec unit_index(int dim, int axis, int sign) {
  IVec n(dim, 0);
  n[axis] = sign;
  return n;
}

LatticeModel blank(int dim, const std::string& name) {
  LatticeModel m;
  m.name = name;
  m.lattice = unit_lattice(dim);
  m.potential = FourierScalar(dim);
  m.vector_potential = FourierVector(dim);
  return m;
}

// lower eigenvectors of a Hermitian matrix, phase fixed by the tie-break rule
CMat lower_half(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Eigen::Index k = h.rows() / 2;
  RVec e = es.eigenvalues().head(k);
  CMat v = es.eigenvectors().leftCols(k);
  apply_tie_break(e, v);
  return v;
}

RVec dirac_vector(const RVec& kappa, double mass) {
  RVec n(5);
  double c = 0.0;
  for (int j = 0; j < 4; ++j) {
    n[j] = std::sin(kTwoPi * kappa[j]);
    c += std::cos(kTwoPi * kappa[j]);
  }
  n[4] = mass - c;
  return n;
}

}  // namespace

LatticeModel free_model(int dim) { return blank(dim, "free"); }

LatticeModel cos2d_model(double v) {
  LatticeModel m = blank(2, "cos2d");
  for (int a = 0; a < 2; ++a)
    for (int s : {-1, 1}) m.potential.set(unit_index(2, a, s), v);
  return m;
}

LatticeModel magnetic_sin_model(double v, double alpha) {
  LatticeModel m = cos2d_model(v);
  m.name = "magnetic-sin";
  // alpha sin(2 pi y2) = (alpha / 2i) (e^{2 pi i y2} - e^{-2 pi i y2})
  m.vector_potential.comp[0].set({0, 1}, cplx(0.0, -0.5 * alpha));
  m.vector_potential.comp[0].set({0, -1}, cplx(0.0, 0.5 * alpha));
  return m;
}

LatticeModel gauge_model(double v, double alpha) {
  LatticeModel m = cos2d_model(v);
  m.name = "pure-gauge";
  // chi = alpha/(2 pi) sin(2 pi y1) cos(2 pi y2); A = grad chi has coefficients i G chi_n
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      cplx chi = alpha / kTwoPi * (static_cast<double>(s1) / cplx(0.0, 2.0)) * 0.5;
      m.vector_potential.comp[0].add({s1, s2}, cplx(0.0, kTwoPi * s1) * chi);
      m.vector_potential.comp[1].add({s1, s2}, cplx(0.0, kTwoPi * s2) * chi);
    }
  return m;
}

LatticeModel cos1d_model(double v) {
  LatticeModel m = blank(1, "cos1d");
  m.potential.set({1}, v);
  m.potential.set({-1}, v);
  return m;
}

LatticeModel dimer2d_model(double v1, double w, double v2) {
  LatticeModel m = blank(2, "dimer2d");
  for (int s : {-1, 1}) {
    m.potential.set({2 * s, 0}, v1);
    m.potential.set({s, 0}, w);
    m.potential.set({0, s}, v2);
  }
  return m;
}

LatticeModel cos4d_model(double v) {
  LatticeModel m = blank(4, "cos4d");
  for (int a = 0; a < 4; ++a)
    for (int s : {-1, 1}) m.potential.set(unit_index(4, a, s), v);
  return m;
}

std::array<CMat, 5> dirac_gammas() {
  CMat sx(2, 2), sy(2, 2), sz(2, 2), id = CMat::Identity(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  return {kron(sx, sx), kron(sx, sy), kron(sx, sz), kron(sy, id), kron(sz, id)};
}

CMat skyrmion_frame(const RVec& kappa, double mass) {
  double n1 = std::sin(kTwoPi * kappa[0]), n2 = std::sin(kTwoPi * kappa[1]);
  double n3 = mass - std::cos(kTwoPi * kappa[0]) - std::cos(kTwoPi * kappa[1]);
  CMat h(2, 2);
  h << n3, cplx(n1, -n2), cplx(n1, n2), -n3;
  return lower_half(h);
}

CMat dirac4_frame(const RVec& kappa, double mass) {
  static const std::array<CMat, 5> g = dirac_gammas();
  RVec n = dirac_vector(kappa, mass);
  CMat h = CMat::Zero(4, 4);
  for (int a = 0; a < 5; ++a) h += n[a] * g[a];
  return lower_half(h);
}

ProjectorField skyrmion_field(int n, double mass) {
  return projector_field_from(KGrid(IVec{n, n}), [mass](const RVec& k) { return skyrmion_frame(k, mass); });
}

ProjectorField dirac4_field(int n, double mass) {
  return projector_field_from(KGrid(IVec{n, n, n, n}), [mass](const RVec& k) { return dirac4_frame(k, mass); });
}

ProjectorField constant_field(const KGrid& grid, const CMat& frame) {
  return projector_field_from(grid, [&frame](const RVec&) { return frame; });
}

double skyrmion_density_degree(double mass, int res) {
  double sum = 0.0;
  const double h = 1.0 / res;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      double a = kTwoPi * i * h, b = kTwoPi * j * h;
      Eigen::Vector3d n(std::sin(a), std::sin(b), mass - std::cos(a) - std::cos(b));
      Eigen::Vector3d d1(kTwoPi * std::cos(a), 0.0, kTwoPi * std::sin(a));
      Eigen::Vector3d d2(0.0, kTwoPi * std::cos(b), kTwoPi * std::sin(b));
      sum += n.dot(d1.cross(d2)) / std::pow(n.norm(), 3);
    }
  }
  return sum * h * h / (4.0 * kPi);
}

int dirac4_mapping_degree(double mass, bool south, int seeds) {
  // regular value close to the chosen pole, in the hemisphere chart x -> (x, +-sqrt(1 - |x|^2))
  RVec target(4);
  target << 0.013, -0.021, 0.017, 0.008;
  const double chart_orientation = south ? -1.0 : 1.0;
  auto chart = [&](const RVec& k, double& height) {
    RVec n = dirac_vector(k, mass);
    n /= n.norm();
    height = n[4];
    return RVec(n.head(4));
  };
  std::vector<RVec> roots;
  std::vector<int> signs;
  IVec dims(4, seeds);
  for (std::size_t f = 0; f < grid_volume(dims); ++f) {
    IVec idx = unflat_index(f, dims);
    RVec k(4);
    for (int j = 0; j < 4; ++j) k[j] = (idx[j] + 0.5) / seeds;
    double height = 0.0;
    RVec r = chart(k, height) - target;
    if ((south ? height > 0.0 : height < 0.0) || r.norm() > 0.5) continue;
    bool converged = false;
    RMat J(4, 4);
    for (int it = 0; it < 60 && !converged; ++it) {
      r = chart(k, height) - target;
      for (int c = 0; c < 4; ++c) {
        RVec kp = k, km = k;
        kp[c] += 1e-6;
        km[c] -= 1e-6;
        double hh;
        J.col(c) = (chart(kp, hh) - chart(km, hh)) / 2e-6;
      }
      RVec step = J.fullPivLu().solve(r);
      double len = step.norm();
      if (len > 0.05) step *= 0.05 / len;
      k -= step;
      if (r.norm() < 1e-13 || len < 1e-14) converged = r.norm() < 1e-10;
    }
    r = chart(k, height) - target;
    if (!converged && r.norm() > 1e-10) continue;
    if (south ? height > 0.0 : height < 0.0) continue;
    for (int j = 0; j < 4; ++j) k[j] -= std::floor(k[j]);
    bool seen = false;
    for (const RVec& q : roots) {
      RVec d = k - q;
      for (int j = 0; j < 4; ++j) d[j] -= std::round(d[j]);
      if (d.norm() < 1e-6) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    roots.push_back(k);
    signs.push_back(J.determinant() * chart_orientation > 0.0 ? 1 : -1);
  }
  int deg = 0;
  for (int s : signs) deg += s;
  return deg;
}

}  // namespace magbloch
