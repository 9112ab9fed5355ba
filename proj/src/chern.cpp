/*
 * chern.cpp
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

#include "chern.hpp"

#include <cmath>
#include <sstream>

#include "fixtures.hpp"

namespace magbloch {

namespace {

std::string kappa_text(const RVec& k) {
  std::ostringstream os;
  os << "(" << k.transpose() << ")";
  return os.str();
}

// Unitary polar factor of Phi(a)^dagger Phi(b); reports the smallest singular value.
CMat unitary_link(const CMat& a, const CMat& b, double& smin) {
  CMat overlap = a.adjoint() * b;
  Eigen::JacobiSVD<CMat> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  smin = svd.singularValues().minCoeff();
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Principal logarithm of a unitary matrix; returns the largest |eigen-phase|.
CMat unitary_log(const CMat& w, double& max_phase) {
  Eigen::ComplexEigenSolver<CMat> es(w);
  const CVec& lam = es.eigenvalues();
  CVec logs(lam.size());
  max_phase = 0.0;
  for (Eigen::Index a = 0; a < lam.size(); ++a) {
    double ph = std::arg(lam[a]);
    max_phase = std::max(max_phase, std::abs(ph));
    logs[a] = cplx(std::log(std::abs(lam[a])), ph);
  }
  const CMat& V = es.eigenvectors();
  return V * logs.asDiagonal() * V.inverse();
}

}  // namespace

Chern1Plaquette chern1_plaquette(const ProjectorField& field, int i, int j, const IVec& slice) {
  const int d = field.dim();
  if (i < 0 || j < 0 || i >= d || j >= d || i == j) fail(ErrorKind::Config, "plane", "invalid coordinate plane");
  const int ni = field.grid.dims[i], nj = field.grid.dims[j];
  if (ni < 6 || nj < 6) fail(ErrorKind::Config, "grid", "plaquette Chern numbers need at least 6 points per plane axis");
  IVec base = slice.empty() ? IVec(d, 0) : slice;
  Chern1Plaquette out;
  out.plane = {i, j};
  // link phases theta_mu(a, b) along both axes of the plane
  std::vector<double> ti(static_cast<std::size_t>(ni) * nj), tj(ti.size());
  std::vector<double> dets(ti.size() * 2);
  auto at = [&](int a, int b) {
    IVec idx = base;
    idx[i] = a;
    idx[j] = b;
    return idx;
  };
  parallel_for(ti.size(), [&](std::size_t f) {
    int a = static_cast<int>(f / nj), b = static_cast<int>(f % nj);
    IVec idx = at(a, b);
    CMat here = field.frame_at(idx);
    cplx li = (here.adjoint() * field.neighbour(idx, i, 1)).determinant();
    cplx lj = (here.adjoint() * field.neighbour(idx, j, 1)).determinant();
    dets[2 * f] = std::abs(li);
    dets[2 * f + 1] = std::abs(lj);
    ti[f] = std::arg(li);
    tj[f] = std::arg(lj);
  });
  for (std::size_t f = 0; f < ti.size(); ++f) {
    double dm = std::min(dets[2 * f], dets[2 * f + 1]);
    out.min_link = std::min(out.min_link, dm);
    if (dm < kMinLinkDeterminant) {
      int a = static_cast<int>(f / nj), b = static_cast<int>(f % nj);
      fail(ErrorKind::Numerical, "grid-too-coarse",
           "vanishing link overlap determinant at kappa = " + kappa_text(field.grid.point(at(a, b))));
    }
  }
  long branches = 0;
  double flux_sum = 0.0;
  for (int a = 0; a < ni; ++a) {
    for (int b = 0; b < nj; ++b) {
      std::size_t f = static_cast<std::size_t>(a) * nj + b;
      std::size_t fa = static_cast<std::size_t>((a + 1) % ni) * nj + b;
      std::size_t fb = static_cast<std::size_t>(a) * nj + (b + 1) % nj;
      double raw = ti[f] + tj[fa] - ti[fb] - tj[f];
      double flux = std::remainder(raw, kTwoPi);
      if (flux <= -kPi) flux += kTwoPi;
      if (std::abs(flux) >= kPi - kFluxBranchGuard)
        fail(ErrorKind::Numerical, "grid-too-coarse",
             "plaquette flux within the branch guard of pi at kappa = " + kappa_text(field.grid.point(at(a, b))));
      branches += std::lround((flux - raw) / kTwoPi);
      flux_sum += flux;
      out.max_abs_flux = std::max(out.max_abs_flux, std::abs(flux));
    }
  }
  // the curvature form (i/2pi) Tr Q is minus the accumulated Berry phase per unit 2pi
  out.value = -branches;
  out.flux_over_2pi = -flux_sum / kTwoPi;
  out.residual = std::abs(out.flux_over_2pi - static_cast<double>(out.value));
  return out;
}

Chern1Curvature chern1_curvature(const ProjectorField& field, int i, int j) {
  Chern1Curvature out;
  out.plane = {i, j};
  if (i == j) {
    out.per_slice.assign(1, 0.0);
    return out;
  }
  std::vector<cplx> tr = q_trace(field, i, j);
  IVec tdims;
  for (int a = 0; a < field.dim(); ++a)
    if (a != i && a != j) tdims.push_back(field.grid.dims[a]);
  const std::size_t nslices = tdims.empty() ? 1 : grid_volume(tdims);
  std::vector<cplx> sums(nslices, 0.0);
  cplx total = 0.0;
  for (std::size_t f = 0; f < tr.size(); ++f) {
    IVec idx = unflat_index(f, field.grid.dims);
    IVec t;
    for (int a = 0; a < field.dim(); ++a)
      if (a != i && a != j) t.push_back(idx[a]);
    std::size_t s = tdims.empty() ? 0 : flat_index(t, tdims);
    sums[s] += tr[f];
    total += tr[f];
  }
  const double per = static_cast<double>(field.grid.dims[i]) * field.grid.dims[j];
  const cplx pref(0.0, 1.0 / kTwoPi);
  for (cplx s : sums) out.per_slice.push_back((pref * s / per).real());
  cplx avg = pref * total / static_cast<double>(tr.size());
  out.value = avg.real();
  out.imaginary = std::abs(avg.imag());
  return out;
}

Chern2Plaquette chern2_plaquette(const ProjectorField& field, int sign) {
  if (field.dim() != 4) fail(ErrorKind::Config, "dimension", "second Chern numbers need d = 4");
  for (int a = 0; a < 4; ++a)
    if (field.grid.dims[a] < 6) fail(ErrorKind::Config, "grid", "second Chern numbers need at least 6 points per axis");
  const std::size_t n = field.frames.size();
  const int m = field.m;
  // links[f][mu]
  std::vector<std::array<CMat, 4>> links(n);
  std::vector<double> smin(n, 1.0);
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    for (int mu = 0; mu < 4; ++mu) {
      double s = 1.0;
      links[f][mu] = unitary_link(field.frames[f], field.neighbour(idx, mu, 1), s);
      smin[f] = std::min(smin[f], s);
    }
  });
  Chern2Plaquette out;
  for (std::size_t f = 0; f < n; ++f) {
    out.min_singular = std::min(out.min_singular, smin[f]);
    if (smin[f] < kMinLinkDeterminant)
      fail(ErrorKind::Numerical, "grid-too-coarse", "singular link overlap at kappa = " + kappa_text(field.grid.point(f)));
  }
  std::vector<cplx> density(n);
  std::vector<double> phase(n, 0.0);
  parallel_for(n, [&](std::size_t f) {
    IVec idx = unflat_index(f, field.grid.dims);
    auto shifted = [&](int mu) {
      IVec k = idx;
      k[mu] = (k[mu] + 1) % field.grid.dims[mu];
      return flat_index(k, field.grid.dims);
    };
    std::array<std::array<CMat, 4>, 4> F;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu + 1; nu < 4; ++nu) {
        CMat w = links[f][mu] * links[shifted(mu)][nu] * links[shifted(nu)][mu].adjoint() * links[f][nu].adjoint();
        double ph = 0.0;
        F[mu][nu] = unitary_log(w, ph);
        phase[f] = std::max(phase[f], ph);
      }
    }
    (void)m;
    density[f] = (F[0][1] * F[2][3] - F[0][2] * F[1][3] + F[0][3] * F[1][2]).trace();
  });
  cplx total = 0.0;
  for (std::size_t f = 0; f < n; ++f) {
    out.max_abs_phase = std::max(out.max_abs_phase, phase[f]);
    if (phase[f] >= kPi - kFluxBranchGuard)
      fail(ErrorKind::Numerical, "grid-too-coarse",
           "plaquette holonomy eigenvalue near -1 at kappa = " + kappa_text(field.grid.point(f)));
    total += density[f];
  }
  // (1/32 pi^2) sum eps tr(F F) = (8/32 pi^2) sum tr(F01 F23 - F02 F13 + F03 F12)
  out.raw = sign * total.real() / (4.0 * kPi * kPi);
  out.value = std::lround(out.raw);
  out.residual = std::abs(out.raw - static_cast<double>(out.value));
  return out;
}

Chern2Curvature chern2_curvature(const ProjectorField& field, int sign, double nu) {
  std::vector<cplx> w = w_trace(field);
  Chern2Curvature out;
  cplx sum = 0.0;
  for (cplx z : w) {
    sum += z;
    out.imaginary = std::max(out.imaginary, std::abs(z.imag()));
  }
  out.average = sum.real() / static_cast<double>(w.size());
  out.value = sign * out.average / (4.0 * kPi * kPi * nu);
  return out;
}

Chern2Calibration calibrate_chern2(int n) {
  // the finite-difference average converges as h^2; extrapolate from grids n and n + 4
  const int n2 = n + 4;
  ProjectorField f = dirac4_field(n, 3.0);
  Chern2Plaquette p = chern2_plaquette(f, 1);
  const double a1 = chern2_curvature(f, 1, 1.0).average;
  const double a2 = chern2_curvature(dirac4_field(n2, 3.0), 1, 1.0).average;
  const double w1 = static_cast<double>(n) * n, w2 = static_cast<double>(n2) * n2;
  Chern2Calibration cal;
  cal.plaquette = p.value;
  cal.average = (w2 * a2 - w1 * a1) / (w2 - w1);
  if (p.value == 0 || cal.average == 0.0)
    fail(ErrorKind::Numerical, "calibration", "calibration fixture produced a zero invariant");
  const double ratio = cal.average / (4.0 * kPi * kPi * static_cast<double>(p.value));
  cal.sign = ratio > 0.0 ? 1 : -1;
  cal.nu = std::abs(ratio);
  return cal;
}

double tpuv_bloch(const std::vector<double>& values, double volume) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size()) / volume;
}

std::vector<SupercellEstimate> tpuv_supercell(const LatticeModel& model, const PlaneWaveBasis& basis,
                                              const RelevantSet& I, const std::vector<int>& sizes,
                                              int samples_per_cell) {
  const int d = model.lattice.dim;
  if (d > 2) fail(ErrorKind::Config, "dimension", "supercell traces are limited to d <= 2");
  if (samples_per_cell <= 0) samples_per_cell = 4 * basis.cutoff() + 2;
  const double vol = model.lattice.volume;
  std::vector<SupercellEstimate> out;
  for (int L : sizes) {
    if (I.bands.empty()) {
      // zero operator
      out.push_back({L, (L + 1) / 2, 0.0});
      continue;
    }
    ProjectorField f = build_projector_field(model, basis, KGrid(IVec(d, L)), I);
    const int w = (L + 1) / 2;
    IVec cells(d, w), samples(d, samples_per_cell);
    const std::size_t ncells = grid_volume(cells), nsamp = grid_volume(samples);
    // plane-wave phases at the in-cell sample points
    CMat waves(nsamp, basis.size());
    for (std::size_t s = 0; s < nsamp; ++s) {
      IVec si = unflat_index(s, samples);
      RVec y(d);
      for (int a = 0; a < d; ++a) y[a] = static_cast<double>(si[a]) / samples_per_cell;
      RVec yc = model.lattice.point(y);
      for (int p = 0; p < basis.size(); ++p)
        waves(s, p) = std::exp(cplx(0.0, model.lattice.reciprocal(basis.index(p)).dot(yc))) / std::sqrt(vol);
    }
    std::vector<double> per_cell(ncells, 0.0);
    const double cell_weight = vol / static_cast<double>(nsamp);
    parallel_for(ncells, [&](std::size_t c) {
      IVec ci = unflat_index(c, cells);
      RVec gamma(d);
      for (int a = 0; a < d; ++a) gamma[a] = ci[a] - w / 2;
      RVec gc = model.lattice.point(gamma);
      double acc = 0.0;
      for (std::size_t q = 0; q < f.frames.size(); ++q) {
        RVec k = model.lattice.reciprocal(f.grid.point(q));
        // psi_k(gamma + y) = e^{i k.(gamma + y)} u_k(y)
        CMat vals = waves * f.frames[q];
        for (std::size_t s = 0; s < nsamp; ++s) {
          IVec si = unflat_index(s, samples);
          RVec y(d);
          for (int a = 0; a < d; ++a) y[a] = static_cast<double>(si[a]) / samples_per_cell;
          cplx ph = std::exp(cplx(0.0, k.dot(gc + model.lattice.point(y))));
          for (int a = 0; a < f.m; ++a) acc += std::norm(ph * vals(s, a));
        }
      }
      per_cell[c] = acc * cell_weight / static_cast<double>(f.frames.size());
    });
    double trace = 0.0;
    for (double v : per_cell) trace += v;
    SupercellEstimate e;
    e.L = L;
    e.window = w;
    e.value = trace / (static_cast<double>(ncells) * vol);
    out.push_back(e);
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Trivial:
      return "trivial";
    case Verdict::NonTrivial:
      return "non-trivial";
    case Verdict::Indeterminate:
      return "indeterminate-unstable-rank";
  }
  return "indeterminate-unstable-rank";
}

int guaranteed_sections(int d, int m) {
  int sigma = std::max(0, m - d / 2);
  if (d % 4 == 2) sigma += 1;
  return std::min(sigma, m);
}

VerdictResult triviality_verdict(const ChernInputs& in) {
  const int d = in.dim, m = in.rank;
  if (d < 1 || m < 1) fail(ErrorKind::Config, "verdict", "dimension and rank must be positive");
  // every coordinate plane must be present
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      bool found = false;
      for (const auto& [plane, v] : in.c1)
        if ((plane[0] == i && plane[1] == j) || (plane[0] == j && plane[1] == i)) found = true;
      if (!found)
        fail(ErrorKind::Config, "incomplete-input",
             "missing first Chern number for plane (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  if (d == 4 && m >= 2 && !in.c2) fail(ErrorKind::Config, "incomplete-input", "missing second Chern number for d = 4");
  VerdictResult r;
  r.sigma = guaranteed_sections(d, m);
  bool any_nonzero = false;
  for (const auto& [plane, v] : in.c1) any_nonzero = any_nonzero || v != 0;
  if (in.c2 && *in.c2 != 0) any_nonzero = true;
  if (any_nonzero) {
    r.verdict = Verdict::NonTrivial;
  } else if (d <= 3 || m == 1) {
    r.verdict = Verdict::Trivial;
  } else if (d == 4) {
    r.verdict = Verdict::Trivial;  // c2 = 0 was required above
  } else if (d <= 2 * m) {
    r.verdict = Verdict::Trivial;
  } else {
    r.verdict = Verdict::Indeterminate;
  }
  return r;
}

ChernReport chern_report(const ProjectorField& field, double volume) {
  ChernReport rep;
  rep.dim = field.dim();
  rep.rank = field.m;
  ChernInputs in;
  in.dim = rep.dim;
  in.rank = rep.rank;
  for (int i = 0; i < rep.dim; ++i)
    for (int j = i + 1; j < rep.dim; ++j) {
      rep.c1.push_back(chern1_plaquette(field, i, j));
      rep.c1_curvature.push_back(chern1_curvature(field, i, j));
      in.c1.push_back({{i, j}, rep.c1.back().value});
    }
  if (rep.dim == 4) {
    rep.c2 = chern2_plaquette(field);
    rep.c2_curvature = chern2_curvature(field);
    rep.instanton_raw = rep.c2_curvature->average;
    rep.instanton_charge = rep.instanton_raw / volume;
    in.c2 = rep.c2->value;
  }
  rep.verdict = triviality_verdict(in);
  return rep;
}

}  // namespace magbloch
