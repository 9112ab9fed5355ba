/*
 * test_chern.cpp
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

using namespace magbloch;

TEST_CASE("skyrmion plaquette number matches the density oracle") {
  double oracle = skyrmion_density_degree(1.0, 512);
  MESSAGE("skyrmion density degree (m=1): " << oracle);
  CHECK(std::abs(oracle - std::round(oracle)) < 1e-3);
  Chern1Plaquette c = chern1_plaquette(skyrmion_field(24, 1.0), 0, 1);
  CHECK(std::abs(c.value) == 1);
  CHECK(c.residual < 1e-9);
  MESSAGE("plaquette c1 = " << c.value << ", oracle = " << std::lround(oracle));
  CHECK(c.value == std::lround(oracle));
  Chern1Plaquette t = chern1_plaquette(skyrmion_field(24, 3.0), 0, 1);
  CHECK(t.value == 0);
  CHECK(std::lround(skyrmion_density_degree(3.0, 256)) == 0);
}

TEST_CASE("plaquette orientation and exactness") {
  ProjectorField f = skyrmion_field(16, -1.0);
  Chern1Plaquette a = chern1_plaquette(f, 0, 1), b = chern1_plaquette(f, 1, 0);
  CHECK(a.value == -b.value);
  CHECK(a.value != 0);
  CHECK(a.residual < 1e-9);
}

TEST_CASE("plaquette refusals") {
  CHECK_THROWS_AS(chern1_plaquette(skyrmion_field(4, 1.0), 0, 1), Error);
  // alternating orthogonal frames kill every link determinant
  ProjectorField bad = projector_field_from(KGrid(IVec{6, 6}), [](const RVec& k) {
    CMat f = CMat::Zero(2, 1);
    f(std::lround(k[0] * 6) % 2, 0) = 1.0;
    return f;
  });
  try {
    chern1_plaquette(bad, 0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "grid-too-coarse");
    CHECK(e.exit_code() == 4);
  }
}

TEST_CASE("physical two-dimensional fixtures have zero first Chern number") {
  PlaneWaveBasis b(2, 4);
  for (const LatticeModel& m : {cos2d_model(5.0), gauge_model(5.0, 0.5)}) {
    ProjectorField f = build_projector_field(m, b, KGrid(IVec{12, 12}), RelevantSet::lowest(1));
    CHECK(chern1_plaquette(f, 0, 1).value == 0);
    CHECK(std::abs(chern1_curvature(f, 0, 1).value) < 1e-6);
  }
  // without an antiunitary symmetry the curvature sum is only zero up to O(h^2)
  LatticeModel mag = magnetic_sin_model(5.0, 0.5);
  ProjectorField f12 = build_projector_field(mag, b, KGrid(IVec{12, 12}), RelevantSet::lowest(1));
  ProjectorField f24 = build_projector_field(mag, b, KGrid(IVec{24, 24}), RelevantSet::lowest(1));
  CHECK(chern1_plaquette(f12, 0, 1).value == 0);
  CHECK(chern1_plaquette(f24, 0, 1).value == 0);
  double c12 = std::abs(chern1_curvature(f12, 0, 1).value), c24 = std::abs(chern1_curvature(f24, 0, 1).value);
  CHECK(c12 < 0.05);
  CHECK(c24 < 0.35 * c12);
}

TEST_CASE("curvature and plaquette methods agree on the skyrmion") {
  ProjectorField f = skyrmion_field(24, 1.0);
  Chern1Curvature c = chern1_curvature(f, 0, 1);
  Chern1Plaquette p = chern1_plaquette(f, 0, 1);
  MESSAGE("curvature c1 = " << c.value << "  plaquette = " << p.value);
  CHECK(std::abs(c.value - p.value) <= 0.05);
  CHECK(c.imaginary < 1e-12);
  CHECK(std::abs(chern1_curvature(f, 1, 0).value + c.value) < 1e-14);
  CHECK(chern1_curvature(f, 0, 0).value == 0.0);
}

TEST_CASE("first Chern numbers on a slice of a higher-dimensional field") {
  // skyrmion in the (1,3) plane, constant along axis 2
  ProjectorField f = projector_field_from(KGrid(IVec{12, 6, 12}), [](const RVec& k) {
    RVec q(2);
    q << k[0], k[2];
    return skyrmion_frame(q, 1.0);
  });
  CHECK(chern1_plaquette(f, 0, 2, IVec{0, 3, 0}).value == chern1_plaquette(skyrmion_field(12, 1.0), 0, 1).value);
  CHECK(chern1_plaquette(f, 0, 1).value == 0);
  Chern1Curvature c = chern1_curvature(f, 0, 2);
  CHECK(c.per_slice.size() == 6);
  for (double v : c.per_slice) CHECK(std::abs(v - c.value) < 1e-12);
}

TEST_CASE("dirac mapping degree oracle") {
  int south = dirac4_mapping_degree(3.0, true), north = dirac4_mapping_degree(3.0, false);
  MESSAGE("dirac m=3 degree south " << south << " north " << north);
  CHECK(south == north);
  CHECK(std::abs(south) == 1);
  CHECK(dirac4_mapping_degree(5.0, true) == 0);
  CHECK(dirac4_mapping_degree(5.0, false) == 0);
  CHECK(dirac4_mapping_degree(-3.0, true) == -south);
}

TEST_CASE("second Chern number by plaquettes") {
  Chern2Plaquette trivial = chern2_plaquette(dirac4_field(10, 5.0));
  CHECK(trivial.value == 0);
  ProjectorField f = dirac4_field(10, 3.0);
  Chern2Plaquette p = chern2_plaquette(f);
  MESSAGE("dirac m=3 c2 = " << p.value << " raw " << p.raw);
  CHECK(p.value == dirac4_mapping_degree(3.0));
  CHECK(p.residual < 0.2);
  ProjectorField swapped = projector_field_from(f.grid, [](const RVec& k) {
    RVec q = k;
    std::swap(q[2], q[3]);
    return dirac4_frame(q, 3.0);
  });
  CHECK(chern2_plaquette(swapped).value == -p.value);
}

TEST_CASE("second Chern number by curvature and calibration") {
  Chern2Calibration cal = calibrate_chern2();
  MESSAGE("calibration sign " << cal.sign << " nu " << cal.nu);
  CHECK(cal.sign == kChern2Sign);
  CHECK(std::abs(cal.nu - kChern2Nu) < 0.05);
  ProjectorField f = dirac4_field(12, 3.0);
  Chern2Curvature c = chern2_curvature(f);
  Chern2Curvature c16 = chern2_curvature(dirac4_field(16, 3.0));
  double extrapolated = (256.0 * c16.value - 144.0 * c.value) / 112.0;
  MESSAGE("curvature c2: n=12 " << c.value << " n=16 " << c16.value << " extrapolated " << extrapolated);
  CHECK(std::abs(extrapolated - chern2_plaquette(f).value) <= 0.05);
  CHECK(std::abs(c16.value - c.value) > 0.0);
  CHECK(c.imaginary < 1e-10);
  CHECK(std::abs(chern2_curvature(dirac4_field(10, 5.0)).value) < 0.1);
  CMat p0 = CMat::Zero(4, 2);
  p0(1, 0) = 1.0;
  p0(3, 1) = 1.0;
  CHECK(std::abs(chern2_curvature(constant_field(KGrid(IVec{6, 6, 6, 6}), p0)).value) < 1e-4);
}

TEST_CASE("trace per unit volume from fibers") {
  RMat e(2, 2);
  e << 2.0, 0.0, 0.0, 1.5;
  LatticeModel m = cos2d_model(3.0);
  m.lattice = make_lattice(e);
  PlaneWaveBasis b(2, 3);
  ProjectorField f = build_projector_field(m, b, KGrid(IVec{6, 6}), RelevantSet::lowest(2));
  std::vector<double> tr;
  for (std::size_t p = 0; p < f.frames.size(); ++p) tr.push_back(f.projector(p).trace().real());
  CHECK(std::abs(tpuv_bloch(tr, m.lattice.volume) - 2.0 / 3.0) < 1e-10);

  LatticeModel free = free_model(2);
  ProjectorField g = build_projector_field(free, b, KGrid(IVec{5, 5}), RelevantSet::lowest(1));
  FiberAssembler fa(free, b);
  std::vector<double> php, e1;
  for (std::size_t p = 0; p < g.frames.size(); ++p) {
    php.push_back((g.frames[p].adjoint() * fa.assemble(g.grid.point(p)) * g.frames[p]).trace().real());
    e1.push_back(g.bands[p][0]);
  }
  CHECK(std::abs(tpuv_bloch(php, 1.0) - tpuv_bloch(e1, 1.0)) < 1e-10);

  // trace property for a constant random fiber operator
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  CMat X(b.size(), b.size());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) X(i, j) = cplx(nd(rng), nd(rng));
  std::vector<double> comm;
  for (std::size_t p = 0; p < g.frames.size(); ++p) {
    CMat P = g.projector(p);
    comm.push_back(std::abs((X * P - P * X).trace()));
  }
  CHECK(tpuv_bloch(comm, 1.0) < 1e-12);
}

TEST_CASE("trace per unit volume from supercells") {
  RMat e(1, 1);
  e << 1.5;
  LatticeModel m = cos1d_model(4.0);
  m.lattice = make_lattice(e);
  PlaneWaveBasis b(1, 4);
  auto est = tpuv_supercell(m, b, RelevantSet::lowest(1), {4, 8, 16});
  for (const auto& s : est) CHECK(std::abs(s.value - 1.0 / 1.5) / (1.0 / 1.5) < 0.02);
  for (const auto& s : tpuv_supercell(m, b, RelevantSet{}, {4, 8})) CHECK(s.value == 0.0);
}

TEST_CASE("triviality verdict truth table") {
  auto planes = [](int d, long v) {
    std::vector<std::pair<std::array<int, 2>, long>> c;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) c.push_back({{i, j}, v});
    return c;
  };
  ChernInputs a{2, 1, planes(2, 0), std::nullopt};
  CHECK(triviality_verdict(a).verdict == Verdict::Trivial);
  ChernInputs b{4, 2, planes(4, 0), 1};
  CHECK(triviality_verdict(b).verdict == Verdict::NonTrivial);
  ChernInputs c{5, 2, planes(5, 0), std::nullopt};
  VerdictResult rc = triviality_verdict(c);
  CHECK(rc.verdict == Verdict::Indeterminate);
  CHECK(rc.sigma == 0);
  ChernInputs d{4, 2, planes(4, 0), 0};
  CHECK(triviality_verdict(d).verdict == Verdict::Trivial);
  ChernInputs e{3, 4, planes(3, 0), std::nullopt};
  CHECK(triviality_verdict(e).verdict == Verdict::Trivial);
  ChernInputs f{2, 1, planes(2, 1), std::nullopt};
  CHECK(triviality_verdict(f).verdict == Verdict::NonTrivial);
  ChernInputs g{6, 3, planes(6, 0), std::nullopt};
  CHECK(triviality_verdict(g).verdict == Verdict::Trivial);
  ChernInputs h{4, 2, planes(4, 0), std::nullopt};
  CHECK_THROWS_AS(triviality_verdict(h), Error);
  ChernInputs i{3, 1, planes(2, 0), std::nullopt};
  CHECK_THROWS_AS(triviality_verdict(i), Error);
  CHECK(guaranteed_sections(2, 1) == 1);
  CHECK(guaranteed_sections(4, 3) == 1);
  CHECK(guaranteed_sections(6, 5) == 3);
  CHECK(guaranteed_sections(6, 1) == 1);
  CHECK(guaranteed_sections(3, 1) == 0);
  CHECK(guaranteed_sections(8, 2) == 0);
}
