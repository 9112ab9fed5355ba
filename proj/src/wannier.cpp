/*
 * wannier.cpp
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

#include "wannier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fft.hpp"

namespace magbloch {

namespace {

std::string kappa_text(const RVec& k) {
  std::ostringstream os;
  os << "(" << k.transpose() << ")";
  return os.str();
}

RVec reduced(const IVec& raw, const IVec& dims) {
  RVec k(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) k[j] = static_cast<double>(raw[j]) / dims[j];
  return k;
}

// Gram-Schmidt with a re-orthogonalization pass; returns the smallest pre-normalization norm.
double orthonormalize(CMat& X) {
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < X.cols(); ++a) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index b = 0; b < a; ++b) X.col(a) -= X.col(b) * X.col(b).dot(X.col(a));
    double n = X.col(a).norm();
    smallest = std::min(smallest, n);
    if (n > 0.0) X.col(a) /= n;
  }
  return smallest;
}

// Smallest singular value of a small square matrix.
double min_singular(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues().minCoeff();
}

CMat project(const ProjectorField& field, const IVec& raw, const CMat& v) {
  CMat F = field.frame_at(raw);
  return F * (F.adjoint() * v);
}

std::vector<CMat> transport_line(const ProjectorField& field, const CMat& start, const IVec& from, int axis, int steps,
                                 double& smin) {
  std::vector<CMat> out;
  out.reserve(std::abs(steps) + 1);
  out.push_back(start);
  const int dir = steps >= 0 ? 1 : -1;
  IVec raw = from;
  for (int s = 0; s < std::abs(steps); ++s) {
    raw[axis] += dir;
    CMat F = field.frame_at(raw);
    CMat overlap = F.adjoint() * out.back();
    double sv = min_singular(overlap);
    smin = std::min(smin, sv);
    if (sv < kTransportMinSingular)
      fail(ErrorKind::Numerical, "transport-breakdown",
           "singular transport overlap at kappa = " + kappa_text(reduced(raw, field.grid.dims)));
    CMat next = F * overlap;
    orthonormalize(next);
    out.push_back(std::move(next));
  }
  return out;
}

SectionField empty_section(const ProjectorField& field) {
  SectionField s;
  s.grid = field.grid;
  s.M = field.M;
  s.m = field.m;
  s.embedding = field.embedding;
  s.basis = field.basis;
  s.lower = IVec(field.dim(), 0);
  s.frames.resize(field.frames.size());
  return s;
}

IVec unit(int d, int axis, int v = 1) {
  IVec e(d, 0);
  e[axis] = v;
  return e;
}

}  // namespace

CMat SectionField::at(const IVec& raw) const {
  IVec base(raw.size()), wraps(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    int r = raw[j] - lower[j];
    wraps[j] = floor_div(r, grid.dims[j]);
    base[j] = r - wraps[j] * grid.dims[j];
  }
  return embedding_shift(embedding, basis, frames[flat_index(base, grid.dims)], wraps);
}

IVec SectionField::raw_index(std::size_t flat) const {
  IVec idx = unflat_index(flat, grid.dims);
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] += lower[j];
  return idx;
}

SectionInvariants section_invariants(const SectionField& section, const ProjectorField& field) {
  const std::size_t n = section.frames.size();
  std::vector<double> orth(n), range(n);
  parallel_for(n, [&](std::size_t f) {
    const CMat& psi = section.frames[f];
    orth[f] = (psi.adjoint() * psi - CMat::Identity(psi.cols(), psi.cols())).norm();
    range[f] = (project(field, section.raw_index(f), psi) - psi).colwise().norm().maxCoeff();
  });
  SectionInvariants out;
  out.orthonormality = *std::max_element(orth.begin(), orth.end());
  out.range = *std::max_element(range.begin(), range.end());
  return out;
}

CVec trs_fix_origin(const CVec& psi0, const FiberSymmetry& J) {
  if (std::abs(psi0.norm() - 1.0) > 1e-8) fail(ErrorKind::Config, "not-normalized", "origin vector must be a unit vector");
  CVec v = psi0 + J.apply(psi0);
  if (v.norm() >= 1e-6) return v / v.norm();
  CVec w = cplx(0.0, 1.0) * psi0;
  v = w + J.apply(w);
  if (v.norm() < 1e-6) fail(ErrorKind::Numerical, "numerical-degeneracy", "no J-fixed vector in the origin line");
  return v / v.norm();
}

std::vector<CMat> parallel_transport(const ProjectorField& field, const CMat& start, const IVec& from, int axis,
                                     int steps) {
  double smin = 1.0;
  return transport_line(field, start, from, axis, steps, smin);
}

long transport_winding(const ProjectorField& field, int a, int b) {
  const int d = field.dim();
  if (a < 0 || b < 0 || a >= d || b >= d || a == b) fail(ErrorKind::Config, "plane", "invalid coordinate plane");
  const int na = field.grid.dims[a];
  std::vector<double> theta(na);
  parallel_for(static_cast<std::size_t>(na), [&](std::size_t s) {
    IVec raw(d, 0);
    raw[a] = static_cast<int>(s);
    CMat start = field.frame_at(raw);
    double smin = 1.0;
    std::vector<CMat> line = transport_line(field, start, raw, b, field.grid.dims[b], smin);
    CMat closed = embedding_shift(field.embedding, field.basis, start, unit(d, b)).adjoint() * line.back();
    theta[s] = std::arg(closed.determinant());
  });
  double total = 0.0;
  for (int s = 0; s < na; ++s) {
    double step = std::remainder(theta[(s + 1) % na] - theta[s], kTwoPi);
    if (std::abs(step) > kMaxUnwrapStep)
      fail(ErrorKind::Numerical, "grid-too-coarse", "Wilson-loop phase jumps by more than pi/2 between neighbours");
    total += step;
  }
  return std::lround(total / kTwoPi);
}

SectionField rank1_trs_gauge(const ProjectorField& field, const FiberSymmetry& J, double trs_tolerance) {
  if (field.m != 1) fail(ErrorKind::Config, "rank", "the time-reversal gauge needs a rank-one field");
  if (J.U.rows() != field.M) fail(ErrorKind::Config, "symmetry", "symmetry and field dimensions differ");
  const int d = field.dim();
  const double input_trs = symmetry_projector_residual(field, J).residual;
  if (input_trs > trs_tolerance) {
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        long w = transport_winding(field, a, b);
        if (w != 0) {
          std::ostringstream os;
          os << "transport phase winds " << w << " times in plane (" << a + 1 << "," << b + 1
             << "); no symmetric periodic gauge exists";
          fail(ErrorKind::Obstruction, "nonzero-winding", os.str());
        }
      }
    std::ostringstream os;
    os << "field is not time-reversal symmetric: residual " << input_trs << " exceeds " << trs_tolerance;
    fail(ErrorKind::Assumption, "trs-violated", os.str());
  }
  IVec half(d), cdims(d);
  for (int j = 0; j < d; ++j) {
    if (field.grid.dims[j] % 2 != 0) fail(ErrorKind::Config, "grid", "the time-reversal gauge needs even grid sizes");
    half[j] = field.grid.dims[j] / 2;
    cdims[j] = field.grid.dims[j] + 1;
  }
  // closed centred cube of raw indices [-h, h]^d
  std::vector<CMat> psi(grid_volume(cdims));
  auto slot = [&](const IVec& raw) -> CMat& {
    IVec c(d);
    for (int j = 0; j < d; ++j) c[j] = raw[j] + half[j];
    return psi[flat_index(c, cdims)];
  };
  auto negated = [](IVec r) {
    for (int& x : r) x = -x;
    return r;
  };
  double smin = 1.0;
  {
    CVec origin = field.frames[0].col(0);
    // re-projection is a no-op when J is a symmetry of the field
    CMat fixed = project(field, IVec(d, 0), trs_fix_origin(origin / origin.norm(), J));
    slot(IVec(d, 0)) = fixed / fixed.norm();
  }
  for (int a = 0; a < d; ++a) {
    // transverse points: axes < a over the closed cube, the rest zero
    IVec tdims(cdims.begin(), cdims.begin() + a);
    const std::size_t nt = tdims.empty() ? 1 : grid_volume(tdims);
    auto transverse = [&](std::size_t t) {
      IVec raw(d, 0);
      if (!tdims.empty()) {
        IVec c = unflat_index(t, tdims);
        for (int j = 0; j < a; ++j) raw[j] = c[j] - half[j];
      }
      return raw;
    };
    auto tflat = [&](const IVec& raw) -> std::size_t {
      if (tdims.empty()) return 0;
      IVec c(a);
      for (int j = 0; j < a; ++j) c[j] = raw[j] + half[j];
      return flat_index(c, tdims);
    };
    // transport over the half space
    std::vector<double> line_min(nt, 1.0);
    parallel_for(nt, [&](std::size_t t) {
      IVec raw = transverse(t);
      std::vector<CMat> line = transport_line(field, slot(raw), raw, a, half[a], line_min[t]);
      for (int s = 1; s <= half[a]; ++s) {
        IVec r = raw;
        r[a] = s;
        slot(r) = std::move(line[s]);
      }
    });
    for (double v : line_min) smin = std::min(smin, v);
    // reflected half: psi(-k) from J psi(k), kept in range
    std::vector<double> refl(nt, 1.0);
    parallel_for(nt, [&](std::size_t t) {
      IVec raw = transverse(t);
      for (int s = 1; s <= half[a]; ++s) {
        IVec r = raw;
        r[a] = -s;
        CMat v = project(field, r, J.apply(slot(negated(r))));
        double n = v.norm();
        refl[t] = std::min(refl[t], n);
        if (n >= kTransportMinSingular) slot(r) = v / n;
      }
    });
    for (std::size_t t = 0; t < nt; ++t) {
      smin = std::min(smin, refl[t]);
      if (refl[t] < kTransportMinSingular)
        fail(ErrorKind::Numerical, "transport-breakdown",
             "reflected vector leaves the band near kappa = " + kappa_text(reduced(transverse(t), field.grid.dims)));
    }
    // mismatch phase on the face k_a = +-1/2
    std::vector<double> theta(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      IVec lo = transverse(t), hi = transverse(t);
      lo[a] = -half[a];
      hi[a] = half[a];
      cplx ov = (embedding_shift(field.embedding, field.basis, slot(lo), unit(d, a)).adjoint() * slot(hi))(0, 0);
      if (std::abs(ov) < kTransportMinSingular)
        fail(ErrorKind::Numerical, "transport-breakdown",
             "face vectors are orthogonal at kappa = " + kappa_text(reduced(hi, field.grid.dims)));
      theta[t] = std::arg(ov);
    }
    // nearest-branch unwrap from the origin outward, axis by axis
    for (int b = 0; b < a; ++b) {
      for (int dist = 1; dist <= half[b]; ++dist) {
        for (std::size_t t = 0; t < nt; ++t) {
          IVec raw = transverse(t);
          bool on = std::abs(raw[b]) == dist;
          for (int c = b + 1; c < a && on; ++c) on = raw[c] == 0;
          if (!on) continue;
          IVec prev = raw;
          prev[b] += raw[b] > 0 ? -1 : 1;
          double ref = theta[tflat(prev)];
          double& th = theta[t];
          th += kTwoPi * std::round((ref - th) / kTwoPi);
          if (std::abs(th - ref) > kMaxUnwrapStep)
            fail(ErrorKind::Numerical, "grid-too-coarse",
                 "mismatch phase jumps by more than pi/2 at kappa = " + kappa_text(reduced(raw, field.grid.dims)));
        }
      }
    }
    for (std::size_t t = 0; t < nt; ++t) {
      IVec raw = transverse(t);
      for (int b = 0; b < a; ++b) {
        if (raw[b] != half[b]) continue;
        IVec other = raw;
        other[b] = -half[b];
        long w = std::lround((theta[t] - theta[tflat(other)]) / kTwoPi);
        if (w != 0) {
          std::ostringstream os;
          os << "mismatch phase for axis " << a + 1 << " winds " << w << " times along axis " << b + 1
             << " at kappa = " << kappa_text(reduced(raw, field.grid.dims));
          fail(ErrorKind::Obstruction, "nonzero-winding", os.str());
        }
      }
      double e = std::remainder(theta[tflat(negated(raw))] - theta[t], kTwoPi);
      if (std::abs(e) > kEvennessTolerance)
        fail(ErrorKind::Obstruction, "uneven-phase",
             "mismatch phase is not even at kappa = " + kappa_text(reduced(raw, field.grid.dims)));
    }
    // redistribute exp(-i theta k_a)
    parallel_for(nt, [&](std::size_t t) {
      IVec r = transverse(t);
      for (int s = -half[a]; s <= half[a]; ++s) {
        r[a] = s;
        slot(r) *= std::polar(1.0, -theta[t] * s / field.grid.dims[a]);
      }
    });
  }
  SectionField out = empty_section(field);
  out.input_trs = input_trs;
  out.lower = IVec(d);
  for (int j = 0; j < d; ++j) out.lower[j] = -half[j];
  out.min_singular = smin;
  for (std::size_t f = 0; f < out.frames.size(); ++f) out.frames[f] = slot(out.raw_index(f));
  // wrap mismatch of the closed cube
  for (std::size_t c = 0; c < psi.size(); ++c) {
    IVec raw = unflat_index(c, cdims);
    for (int j = 0; j < d; ++j) raw[j] -= half[j];
    for (int a = 0; a < d; ++a) {
      if (raw[a] != half[a]) continue;
      IVec lo = raw;
      lo[a] = -half[a];
      double r = (psi[c] - embedding_shift(field.embedding, field.basis, slot(lo), unit(d, a))).norm();
      out.periodicity = std::max(out.periodicity, r);
    }
  }
  double trs = 0.0;
  for (std::size_t f = 0; f < out.frames.size(); ++f) {
    IVec raw = out.raw_index(f);
    trs = std::max(trs, (out.at(negated(raw)) - J.apply(out.frames[f])).norm());
  }
  out.trs = trs;
  out.smoothness = gauge_smoothness(out);
  return out;
}

CMat gaussian_trials(const Lattice& lat, const PlaneWaveBasis& basis, const std::vector<GaussianTrial>& trials,
                     const RVec& kappa) {
  CMat g(basis.size(), static_cast<Eigen::Index>(trials.size()));
  for (std::size_t t = 0; t < trials.size(); ++t) {
    RVec xc = lat.point(trials[t].center);
    const double w2 = trials[t].width * trials[t].width;
    for (int p = 0; p < basis.size(); ++p) {
      RVec q = kappa;
      for (int j = 0; j < basis.dim(); ++j) q[j] += basis.index(p)[j];
      RVec k = lat.reciprocal(q);
      g(p, t) = std::polar(std::exp(-0.5 * k.squaredNorm() * w2), -k.dot(xc));
    }
    g.col(t) /= g.col(t).norm();
  }
  return g;
}

namespace {

CMat loewdin(const ProjectorField& field, const IVec& raw, const TrialFunction& trials, double& smin) {
  CMat g = trials(reduced(raw, field.grid.dims));
  if (g.rows() != field.M || g.cols() != field.m)
    fail(ErrorKind::Config, "trials", "trial block must be M x m with one column per relevant band");
  CMat phi = project(field, raw, g);
  CMat S = phi.adjoint() * phi;
  Eigen::SelfAdjointEigenSolver<CMat> es(S);
  smin = es.eigenvalues().minCoeff();
  if (smin < kTrialMinSingular)
    fail(ErrorKind::Numerical, "trial-failure",
         "projected trials are nearly dependent at kappa = " + kappa_text(reduced(raw, field.grid.dims)));
  RVec inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return phi * (es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace

SectionField multiband_projection_gauge(const ProjectorField& field, const TrialFunction& trials) {
  SectionField out = empty_section(field);
  const std::size_t n = out.frames.size();
  std::vector<double> sv(n, 1.0);
  parallel_for(n, [&](std::size_t f) { out.frames[f] = loewdin(field, out.raw_index(f), trials, sv[f]); });
  out.min_singular = *std::min_element(sv.begin(), sv.end());
  const int d = field.dim();
  for (std::size_t f = 0; f < n; ++f) {
    IVec raw = out.raw_index(f);
    for (int a = 0; a < d; ++a) {
      if (raw[a] != 0) continue;
      IVec w = raw;
      w[a] += field.grid.dims[a];
      double s = 1.0;
      out.periodicity = std::max(out.periodicity, (loewdin(field, w, trials, s) - out.at(w)).norm());
    }
  }
  out.smoothness = gauge_smoothness(out);
  return out;
}

SectionField multiband_projection_gauge(const ProjectorField& field, const Lattice& lat,
                                        const std::vector<GaussianTrial>& trials) {
  if (field.embedding != EmbeddingKind::PlaneWave)
    fail(ErrorKind::Config, "trials", "Gaussian trials need a plane-wave field");
  return multiband_projection_gauge(
      field, [&](const RVec& k) { return gaussian_trials(lat, field.basis, trials, k); });
}

double gauge_smoothness(const SectionField& section) {
  const std::size_t n = section.frames.size();
  std::vector<double> worst(n, 0.0);
  parallel_for(n, [&](std::size_t f) {
    IVec raw = section.raw_index(f);
    for (int a = 0; a < section.dim(); ++a) {
      IVec next = raw;
      next[a] += 1;
      worst[f] = std::max(worst[f], (section.at(next) - section.frames[f]).colwise().norm().maxCoeff());
    }
  });
  return n == 0 ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

double WannierFunction::overlap_shifted(const IVec& gamma) const {
  const int d = static_cast<int>(cells.size());
  IVec dims(d);
  for (int j = 0; j < d; ++j) dims[j] = cells[j] * resolution;
  const double dv = cell_volume / std::pow(static_cast<double>(resolution), d);
  cplx s = 0.0;
  IVec src(d);
  for (std::size_t f = 0; f < samples.size(); ++f) {
    IVec x = unflat_index(f, dims);
    for (int j = 0; j < d; ++j) {
      int v = (x[j] - gamma[j] * resolution) % dims[j];
      src[j] = v < 0 ? v + dims[j] : v;
    }
    s += std::conj(samples[f]) * samples[flat_index(src, dims)];
  }
  return std::abs(s * dv);
}

std::vector<WannierFunction> inverse_bf(const SectionField& section, const Lattice& lat, int resolution) {
  if (section.embedding != EmbeddingKind::PlaneWave)
    fail(ErrorKind::Config, "embedding", "Wannier synthesis needs plane-wave coefficients");
  const int d = section.dim();
  const int N = section.basis.cutoff();
  if (resolution <= 0) resolution = 2 * N + 2;
  if (resolution < 2 * N + 1) fail(ErrorKind::Config, "resolution", "real-space resolution must be at least 2N+1");
  IVec dims(d);
  double cells = 1.0;
  for (int j = 0; j < d; ++j) {
    dims[j] = section.grid.dims[j] * resolution;
    cells *= section.grid.dims[j];
  }
  const double scale = 1.0 / (cells * std::sqrt(lat.volume));
  const double dv = lat.volume / std::pow(static_cast<double>(resolution), d);
  std::vector<WannierFunction> out;
  for (int a = 0; a < section.m; ++a) {
    std::vector<cplx> coeffs(grid_volume(dims), 0.0);
    IVec q(d);
    for (std::size_t f = 0; f < section.frames.size(); ++f) {
      IVec raw = section.raw_index(f);
      for (int p = 0; p < section.basis.size(); ++p) {
        for (int j = 0; j < d; ++j) {
          int v = (raw[j] + section.grid.dims[j] * section.basis.index(p)[j]) % dims[j];
          q[j] = v < 0 ? v + dims[j] : v;
        }
        coeffs[flat_index(q, dims)] += section.frames[f](p, a);
      }
    }
    WannierFunction w;
    w.cells = section.grid.dims;
    w.resolution = resolution;
    w.cell_volume = lat.volume;
    w.samples = dft(coeffs, dims, +1);
    for (cplx& z : w.samples) z *= scale;
    w.mass.assign(section.grid.size(), 0.0);
    IVec cell(d);
    for (std::size_t f = 0; f < w.samples.size(); ++f) {
      IVec x = unflat_index(f, dims);
      for (int j = 0; j < d; ++j) cell[j] = x[j] / resolution;
      w.mass[flat_index(cell, w.cells)] += std::norm(w.samples[f]) * dv;
    }
    double total = 0.0;
    for (double& m : w.mass) {
      total += m;
      m = std::sqrt(m);
    }
    w.norm = std::sqrt(total);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ShellMass> shell_masses(const WannierFunction& w, const Lattice& lat) {
  const int d = static_cast<int>(w.cells.size());
  // shells are unit-width bins of |gamma| in multiples of the shortest lattice vector
  double unit_length = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d; ++j) unit_length = std::min(unit_length, lat.basis.col(j).norm());
  // distances are measured from the cell carrying the largest mass
  const IVec peak = unflat_index(
      static_cast<std::size_t>(std::max_element(w.mass.begin(), w.mass.end()) - w.mass.begin()), w.cells);
  std::map<long, ShellMass> bins;
  RVec g(d);
  for (std::size_t f = 0; f < w.mass.size(); ++f) {
    IVec c = unflat_index(f, w.cells);
    for (int j = 0; j < d; ++j) {
      int r = (c[j] - peak[j]) % w.cells[j];
      if (r < 0) r += w.cells[j];
      g[j] = r >= w.cells[j] / 2 ? r - w.cells[j] : r;
    }
    double r = lat.point(g).norm();
    long key = static_cast<long>(std::floor(r / unit_length + 1e-9));
    auto it = bins.find(key);
    if (it == bins.end())
      bins.emplace(key, ShellMass{r, w.mass[f]});
    else if (w.mass[f] > it->second.mass)
      it->second = ShellMass{r, w.mass[f]};
  }
  std::vector<ShellMass> shells;
  for (const auto& [key, s] : bins) shells.push_back(s);
  return shells;
}

DecayFit decay_fit(const std::vector<ShellMass>& shells, double max_radius) {
  std::vector<double> x, y;
  for (const ShellMass& s : shells)
    if (s.radius < max_radius && s.mass > kMassFloor) {
      x.push_back(s.radius);
      y.push_back(std::log(s.mass));
    }
  DecayFit fit;
  fit.shells = static_cast<int>(x.size());
  if (x.size() < 4) {
    // degenerate support: report the rate that reaches the noise floor at the first shell
    double first = 1.0;
    for (const ShellMass& s : shells)
      if (s.radius > 0.0) {
        first = s.radius;
        break;
      }
    fit.capped = true;
    fit.rate = -std::log(kMassFloor) / first;
    if (!x.empty()) {
      fit.rmin = x.front();
      fit.rmax = x.back();
    }
    return fit;
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (my + slope * (x[i] - mx));
    ssr += e * e;
  }
  fit.rate = std::max(0.0, -slope);
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  fit.rmin = x.front();
  fit.rmax = x.back();
  return fit;
}

double supercell_half_width(const WannierFunction& w, const Lattice& lat) {
  double half = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < w.cells.size(); ++j)
    half = std::min(half, 0.5 * w.cells[j] * lat.basis.col(static_cast<Eigen::Index>(j)).norm());
  return half;
}

DecayFit decay_fit(const WannierFunction& w, const Lattice& lat, double max_radius) {
  double half = supercell_half_width(w, lat);
  return decay_fit(shell_masses(w, lat), max_radius > 0.0 ? std::min(max_radius, half) : half);
}

}  // namespace magbloch
