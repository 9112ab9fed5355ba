/*
 * test_wannier.cpp
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

#include <doctest.h>

#include <cmath>
#include <random>

#include "chern.hpp"
#include "fixtures.hpp"
#include "wannier.hpp"

using namespace magbloch;

namespace {

FiberSymmetry plain_conjugation(int M) {
  FiberSymmetry K;
  K.conjugate = true;
  K.U = CMat::Identity(M, M);
  return K;
}

// Lower band of (mass + sum cos) sigma_x + (sum sin) sigma_y, symmetric under plain conjugation.
CMat chiral_frame(const RVec& k, double mass) {
  double hx = mass, hy = 0.0;
  for (Eigen::Index j = 0; j < k.size(); ++j) {
    hx += std::cos(kTwoPi * k[j]);
    hy += std::sin(kTwoPi * k[j]);
  }
  CMat f(2, 1);
  f(0, 0) = 1.0 / std::sqrt(2.0);
  f(1, 0) = -cplx(hx, hy) / std::hypot(hx, hy) / std::sqrt(2.0);
  return f;
}

}  // namespace

TEST_CASE("origin vector fixed by time reversal") {
  LatticeModel m = cos2d_model(5.0);
  PlaneWaveBasis b(2, 3);
  FiberSymmetry J = make_time_reversal(m, b);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{4, 4}), RelevantSet::lowest(1));
  CVec psi = f.frames[0].col(0);
  CVec fixed = trs_fix_origin(psi, J);
  CHECK((J.apply(fixed) - fixed).norm() < 1e-12);
  // already fixed input comes back up to sign
  CVec again = trs_fix_origin(fixed, J);
  CHECK(std::min((again - fixed).norm(), (again + fixed).norm()) < 1e-12);
  // J psi = -psi takes the rotated branch
  CVec odd = cplx(0.0, 1.0) * fixed;
  CHECK((J.apply(odd) + odd).norm() < 1e-12);
  CVec out = trs_fix_origin(odd, J);
  CHECK((J.apply(out) - out).norm() < 1e-12);
  CHECK(std::abs(out.norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(trs_fix_origin(2.0 * fixed, J), Error);

  LatticeModel g = gauge_model(5.0, 0.5);
  PlaneWaveBasis b5(2, 5);
  FiberSymmetry Jg = make_time_reversal(g, b5);
  ProjectorField fg = build_projector_field(g, b5, KGrid(IVec{4, 4}), RelevantSet::lowest(1));
  CVec phi = trs_fix_origin(fg.frames[0].col(0), Jg);
  MESSAGE("pure gauge |J phi - phi| = " << (Jg.apply(phi) - phi).norm());
  CHECK((Jg.apply(phi) - phi).norm() < 1e-9);
}

TEST_CASE("parallel transport") {
  CMat p0 = CMat::Zero(3, 1);
  p0(1, 0) = 1.0;
  ProjectorField flat = constant_field(KGrid(IVec{6, 6}), p0);
  CMat start = cplx(0.0, 1.0) * p0;
  auto line = parallel_transport(flat, start, IVec{0, 0}, 0, 6);
  CHECK(line.size() == 7);
  for (const CMat& x : line) CHECK((x - start).norm() < 1e-15);

  ProjectorField sk = skyrmion_field(16, 1.0);
  auto path = parallel_transport(sk, sk.frames[0], IVec{0, 0}, 1, -20);
  CHECK(path.size() == 21);
  for (int s = 0; s <= 20; ++s) {
    CMat F = sk.frame_at(IVec{0, -s});
    CHECK((F * (F.adjoint() * path[s]) - path[s]).norm() < 1e-12);
    CHECK(std::abs(path[s].norm() - 1.0) < 1e-12);
  }

  ProjectorField two = dirac4_field(6, 3.0);
  auto dline = parallel_transport(two, two.frames[0], IVec{0, 0, 0, 0}, 2, 3);
  for (const CMat& x : dline) CHECK((x.adjoint() * x - CMat::Identity(2, 2)).norm() < 1e-12);

  ProjectorField bad = projector_field_from(KGrid(IVec{6, 6}), [](const RVec& k) {
    CMat f = CMat::Zero(2, 1);
    f(std::lround(k[0] * 6) % 2, 0) = 1.0;
    return f;
  });
  try {
    parallel_transport(bad, bad.frames[0], IVec{0, 0}, 0, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "transport-breakdown");
  }
}

TEST_CASE("plaquette holonomy of transport matches the Berry flux") {
  ProjectorField sk = skyrmion_field(64, 1.0);
  for (IVec corner : {IVec{0, 0}, IVec{5, 9}, IVec{32, 20}}) {
    CMat psi = sk.frame_at(corner);
    IVec at = corner;
    CMat cur = psi;
    const int axes[4] = {0, 1, 0, 1}, steps[4] = {1, 1, -1, -1};
    for (int s = 0; s < 4; ++s) {
      cur = parallel_transport(sk, cur, at, axes[s], steps[s]).back();
      at[axes[s]] += steps[s];
    }
    double holonomy = std::arg((psi.adjoint() * cur)(0, 0));
    auto link = [&](IVec a, int axis) { return (sk.frame_at(a).adjoint() * sk.neighbour(a, axis, 1)).determinant(); };
    IVec c1 = corner, c2 = corner;
    c1[0] += 1;
    c2[1] += 1;
    double flux = std::arg(link(corner, 0) * link(c1, 1) / link(c2, 0) / link(corner, 1));
    CHECK(std::abs(holonomy + flux) < 1e-3);
  }
}

TEST_CASE("rank-one symmetric gauge on the cosine lattice") {
  LatticeModel m = cos2d_model(10.0);
  PlaneWaveBasis b(2, 6);
  FiberSymmetry J = make_time_reversal(m, b);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{16, 16}), RelevantSet::lowest(1));
  SectionField s = rank1_trs_gauge(f, J);
  SectionInvariants inv = section_invariants(s, f);
  MESSAGE("periodicity " << s.periodicity << " trs " << s.trs << " smooth " << s.smoothness);
  CHECK(inv.pass());
  CHECK(s.periodicity <= 1e-6);
  CHECK(s.trs <= 1e-6);
  CHECK(s.input_trs <= 1e-6);
  // first-order continuity: doubling the grid halves the largest neighbour step
  ProjectorField f2 = build_projector_field(m, b, KGrid(IVec{32, 32}), RelevantSet::lowest(1));
  SectionField s2 = rank1_trs_gauge(f2, J);
  CHECK(s2.smoothness <= 0.55 * s.smoothness);
  CHECK(s2.smoothness * 32 < 6.0);
}

TEST_CASE("rank-one symmetric gauge with a pure-gauge potential") {
  LatticeModel m = gauge_model(5.0, 0.5);
  PlaneWaveBasis b(2, 6);
  FiberSymmetry J = make_time_reversal(m, b);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{16, 16}), RelevantSet::lowest(1));
  SectionField s = rank1_trs_gauge(f, J);
  CHECK(section_invariants(s, f).pass());
  CHECK(s.periodicity <= 1e-6);
  CHECK(s.trs <= 1e-6);
}

TEST_CASE("rank-one symmetric gauge in one and three dimensions") {
  LatticeModel m = cos1d_model(4.0);
  PlaneWaveBasis b(1, 8);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{24}), RelevantSet::lowest(1));
  SectionField s = rank1_trs_gauge(f, make_time_reversal(m, b));
  CHECK(section_invariants(s, f).pass());
  CHECK(s.periodicity < 1e-9);
  CHECK(s.trs < 1e-9);

  ProjectorField c = projector_field_from(KGrid(IVec{8, 8, 8}), [](const RVec& k) { return chiral_frame(k, 4.0); });
  SectionField s3 = rank1_trs_gauge(c, plain_conjugation(2));
  CHECK(section_invariants(s3, c).pass());
  CHECK(s3.periodicity < 1e-12);
  CHECK(s3.trs < 1e-12);
  CHECK(s3.smoothness < 1.0);
}

TEST_CASE("rank-one symmetric gauge refusals") {
  // nontrivial bundle: obstruction from the transport winding
  try {
    rank1_trs_gauge(skyrmion_field(24, 1.0), plain_conjugation(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "nonzero-winding");
    CHECK(e.exit_code() == 5);
  }
  CHECK(std::abs(transport_winding(skyrmion_field(24, 1.0), 0, 1)) == 1);
  CHECK(transport_winding(skyrmion_field(24, 1.0), 0, 1) == -transport_winding(skyrmion_field(24, 1.0), 1, 0));
  CHECK(transport_winding(skyrmion_field(24, 3.0), 0, 1) == 0);
  // symmetry residual above tolerance without winding: assumption error
  ProjectorField chiral = projector_field_from(KGrid(IVec{8, 8}), [](const RVec& k) { return chiral_frame(k, 4.0); });
  FiberSymmetry wrong = plain_conjugation(2);
  wrong.U(1, 1) = cplx(0.0, 1.0);
  try {
    rank1_trs_gauge(chiral, wrong);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "trs-violated");
    CHECK(e.exit_code() == 3);
  }
  CHECK_THROWS_AS(rank1_trs_gauge(projector_field_from(KGrid(IVec{7, 8}),
                                                       [](const RVec& k) { return chiral_frame(k, 4.0); }),
                                  plain_conjugation(2)),
                  Error);
  CHECK_THROWS_AS(rank1_trs_gauge(dirac4_field(6, 3.0), plain_conjugation(4)), Error);
}

TEST_CASE("gauge smoothness") {
  CMat p0 = CMat::Zero(2, 1);
  p0(0, 0) = 1.0;
  ProjectorField flat = constant_field(KGrid(IVec{6, 6}), p0);
  SectionField s = multiband_projection_gauge(flat, [&](const RVec&) { return p0; });
  CHECK(gauge_smoothness(s) == 0.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (CMat& x : s.frames) x *= std::polar(1.0, u(rng));
  CHECK(gauge_smoothness(s) > 0.5);
}

TEST_CASE("multiband projection gauge") {
  // two deep wells per cell: the two lowest bands are their bonding and antibonding s states
  LatticeModel m = dimer2d_model(-20.0, -2.0, -40.0);
  PlaneWaveBasis b(2, 5);
  std::vector<GaussianTrial> trials = {{RVec::Zero(2), 0.1}, {(RVec(2) << 0.5, 0.0).finished(), 0.1}};
  double prev = 0.0, wrap = 0.0;
  for (int n : {8, 16}) {
    ProjectorField f = build_projector_field(m, b, KGrid(IVec{n, n}), RelevantSet::lowest(2));
    SectionField s = multiband_projection_gauge(f, m.lattice, trials);
    CHECK(section_invariants(s, f).pass());
    MESSAGE("n " << n << " periodicity " << s.periodicity << " smooth " << s.smoothness << " min S " << s.min_singular);
    // limited by coefficients dropped at the cutoff edge when wrapping
    CHECK(s.periodicity < 1e-6);
    CHECK(s.min_singular >= kTrialMinSingular);
    if (prev > 0.0) CHECK(s.smoothness <= 0.6 * prev);
    wrap = s.periodicity;
    prev = s.smoothness;
  }
  ProjectorField f6 = build_projector_field(m, PlaneWaveBasis(2, 6), KGrid(IVec{8, 8}), RelevantSet::lowest(2));
  CHECK(multiband_projection_gauge(f6, m.lattice, trials).periodicity < 0.1 * wrap);
  // a single trial cannot span a bundle with nonzero Chern number
  CMat up = CMat::Zero(2, 1);
  up(0, 0) = 1.0;
  try {
    multiband_projection_gauge(skyrmion_field(24, 1.0), [&](const RVec&) { return up; });
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "trial-failure");
  }
}

TEST_CASE("inverse transform of a constant section") {
  // constant periodic part: the Wannier function is the Dirichlet kernel of the grid
  LatticeModel m = free_model(1);
  PlaneWaveBasis b(1, 2);
  CMat e0 = CMat::Zero(b.size(), 1);
  e0(b.position(IVec{0}), 0) = 1.0;
  ProjectorField flat = constant_field(KGrid(IVec{8}), e0);
  SectionField s = multiband_projection_gauge(flat, [&](const RVec&) { return e0; });
  s.embedding = EmbeddingKind::PlaneWave;
  s.basis = b;
  WannierFunction w = inverse_bf(s, m.lattice, 6)[0];
  CHECK(std::abs(w.norm - 1.0) < 1e-12);
  for (std::size_t t = 0; t < w.samples.size(); ++t) {
    double x = static_cast<double>(t) / 6.0;
    cplx expect = 0.0;
    for (int i = 0; i < 8; ++i) expect += std::polar(1.0, kTwoPi * i / 8.0 * x);
    CHECK(std::abs(w.samples[t] - expect / 8.0) < 1e-12);
  }
}

TEST_CASE("Wannier functions from the symmetric gauge") {
  LatticeModel m = cos2d_model(10.0);
  PlaneWaveBasis b(2, 6);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{32, 32}), RelevantSet::lowest(1));
  SectionField s = rank1_trs_gauge(f, make_time_reversal(m, b));
  WannierFunction w = inverse_bf(s, m.lattice)[0];
  CHECK(std::abs(w.norm - 1.0) < 1e-8);
  double worst = 0.0;
  for (IVec g : {IVec{1, 0}, IVec{0, 1}, IVec{1, 1}, IVec{3, -2}, IVec{16, 16}}) worst = std::max(worst, w.overlap_shifted(g));
  CHECK(worst <= 1e-8);
  CHECK(std::abs(w.overlap_shifted(IVec{0, 0}) - 1.0) < 1e-8);
  DecayFit fit = decay_fit(w, m.lattice);
  MESSAGE("cos2d decay rate " << fit.rate << " R2 " << fit.r2 << " over " << fit.shells << " shells");
  CHECK(fit.rate > 0.0);
  CHECK(fit.r2 >= 0.99);
  CHECK(fit.shells >= 5);
  CHECK(!fit.capped);
}

TEST_CASE("decay fit") {
  RMat e = RMat::Identity(2, 2);
  Lattice lat = make_lattice(e);
  WannierFunction w;
  w.cells = IVec{16, 16};
  w.mass.resize(256);
  for (std::size_t f = 0; f < w.mass.size(); ++f) {
    IVec c = unflat_index(f, w.cells);
    double gx = c[0] >= 8 ? c[0] - 16 : c[0], gy = c[1] >= 8 ? c[1] - 16 : c[1];
    w.mass[f] = std::exp(-0.7 * std::hypot(gx, gy));
  }
  DecayFit fit = decay_fit(w, lat);
  CHECK(std::abs(fit.rate - 0.7) < 1e-6);
  CHECK(std::abs(fit.r2 - 1.0) < 1e-12);
  CHECK(!fit.capped);
  CHECK(fit.rmin == 0.0);
  CHECK(fit.rmax < 8.0);

  // the same profile centred elsewhere gives the same rate
  WannierFunction moved = w;
  for (std::size_t f = 0; f < w.mass.size(); ++f) {
    IVec c = unflat_index(f, w.cells);
    c[0] = (c[0] + 5) % 16;
    moved.mass[flat_index(c, w.cells)] = w.mass[f];
  }
  CHECK(std::abs(decay_fit(moved, lat).rate - 0.7) < 1e-6);

  WannierFunction single = w;
  std::fill(single.mass.begin(), single.mass.end(), 0.0);
  single.mass[0] = 1.0;
  DecayFit cap = decay_fit(single, lat);
  CHECK(cap.capped);
  CHECK(std::abs(cap.rate - (-std::log(kMassFloor))) < 1e-12);
  CHECK(cap.r2 >= 0.0);
  CHECK(cap.r2 <= 1.0);
}
