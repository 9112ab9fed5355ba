/*
 * test_bloch.cpp
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

#include "bloch.hpp"
#include "fixtures.hpp"

using namespace magbloch;

namespace {
RVec vec2(double a, double b) {
  RVec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("plane-wave basis indexing") {
  PlaneWaveBasis b(2, 3);
  CHECK(b.size() == 49);
  for (int p = 0; p < b.size(); ++p) {
    CHECK(b.position(b.index(p)) == p);
    IVec neg = b.index(p);
    for (int& x : neg) x = -x;
    CHECK(b.position(neg) == b.negated(p));
  }
  CHECK(b.position({4, 0}) == -1);
}

TEST_CASE("free model fiber is diagonal |k+G|^2") {
  PlaneWaveBasis b(2, 2);
  RVec k = vec2(0.3, -0.1);
  CMat H = assemble_fiber(free_model(2), b, k);
  for (int p = 0; p < b.size(); ++p)
    for (int q = 0; q < b.size(); ++q) {
      double expect = 0.0;
      if (p == q) {
        RVec g = kTwoPi * (k + vec2(b.index(p)[0], b.index(p)[1]));
        expect = g.squaredNorm();
      }
      CHECK(std::abs(H(p, q) - expect) < 1e-12);
    }
}

TEST_CASE("cos2d fiber entries") {
  const double v = 1.3;
  PlaneWaveBasis b(2, 2);
  CMat H = assemble_fiber(cos2d_model(v), b, vec2(0.1, 0.2));
  for (int p = 0; p < b.size(); ++p)
    for (int q = 0; q < b.size(); ++q) {
      int dx = b.index(p)[0] - b.index(q)[0], dy = b.index(p)[1] - b.index(q)[1];
      if (std::abs(dx) + std::abs(dy) == 1) CHECK(std::abs(H(p, q) - v) < 1e-14);
      else if (p != q) CHECK(H(p, q) == cplx(0.0));
    }
}

TEST_CASE("fiber is exactly Hermitian") {
  PlaneWaveBasis b(2, 3);
  CMat H = assemble_fiber(magnetic_sin_model(2.0, 0.9), b, vec2(0.37, 0.81));
  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CMat G = assemble_fiber(gauge_model(2.0, 0.9), b, vec2(0.37, 0.81));
  CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("potential cutoff above 2N is refused") {
  LatticeModel m = cos2d_model(1.0);
  m.potential.set({3, 0}, 0.1);
  m.potential.set({-3, 0}, 0.1);
  CHECK_THROWS_AS(assemble_fiber(m, PlaneWaveBasis(2, 1), vec2(0, 0)), Error);
  CHECK_NOTHROW(assemble_fiber(m, PlaneWaveBasis(2, 2), vec2(0, 0)));
}

TEST_CASE("free spectrum at the zone centre and edge") {
  PlaneWaveBasis b(2, 3);
  BandSolution s = solve_bands(assemble_fiber(free_model(2), b, vec2(0, 0)), vec2(0, 0));
  CHECK(std::abs(s.energies[0]) < 1e-12);
  for (int i = 1; i <= 4; ++i) CHECK(std::abs(s.energies[i] - 4 * kPi * kPi) < 1e-10);
  BandSolution x = solve_bands(assemble_fiber(free_model(2), b, vec2(0.5, 0)), vec2(0.5, 0), 3);
  CHECK(std::abs(x.energies[0] - kPi * kPi) < 1e-10);
  CHECK(x.energies.size() == 3);
}

TEST_CASE("eigenvectors are orthonormal and ascending") {
  PlaneWaveBasis b(2, 3);
  RVec k = vec2(0.2, 0.45);
  CMat H = assemble_fiber(magnetic_sin_model(3.0, 0.6), b, k);
  BandSolution s = solve_bands(H, k);
  CHECK((s.vectors.adjoint() * s.vectors - CMat::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() < 1e-10);
  for (Eigen::Index i = 1; i < s.energies.size(); ++i) CHECK(s.energies[i] >= s.energies[i - 1]);
  CHECK((H * s.vectors - s.vectors * s.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
  BandSolution part = solve_bands(H, k, 4);
  CHECK((part.energies - s.energies.head(4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("degenerate tie-break is deterministic") {
  PlaneWaveBasis b(2, 2);
  BandSolution s = solve_bands(assemble_fiber(free_model(2), b, vec2(0, 0)), vec2(0, 0), 5);
  for (int c = 1; c < 5; ++c) {
    Eigen::Index arg;
    s.vectors.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(std::abs(s.vectors(arg, c).imag()) < 1e-14);
    CHECK(s.vectors(arg, c).real() > 0.0);
  }
  // reordering and rephasing the cluster input does not change the output
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ph(0.0, kTwoPi);
  RVec e = s.energies;
  CMat v = s.vectors;
  v.col(1).swap(v.col(3));
  v.col(2).swap(v.col(4));
  for (int c = 0; c < 5; ++c) v.col(c) *= std::polar(1.0, ph(rng));
  apply_tie_break(e, v);
  CHECK((v - s.vectors).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("cos2d lowest band converges in the cutoff") {
  RVec k = vec2(0, 0);
  double e4 = solve_bands(assemble_fiber(cos2d_model(1.0), PlaneWaveBasis(2, 4), k), k, 1).energies[0];
  double e6 = solve_bands(assemble_fiber(cos2d_model(1.0), PlaneWaveBasis(2, 6), k), k, 1).energies[0];
  CHECK(std::abs(e4 - e6) < 1e-8);
}

TEST_CASE("band path examples") {
  PlaneWaveBasis b(2, 3);
  std::vector<RVec> line;
  for (int i = 0; i <= 10; ++i) line.push_back(vec2(i / 10.0, 0.0));
  BandTable t = band_path(free_model(2), b, line, 2);
  CHECK(std::abs(t.energies.front()[0] - t.energies.back()[0]) < 1e-10);
  CHECK(band_path(free_model(2), b, {}, 2).kappa.empty());

  std::vector<RVec> pts, neg;
  for (int i = 0; i < 7; ++i) {
    pts.push_back(vec2(0.13 * i, 0.07 * i + 0.05));
    neg.push_back(-pts.back());
  }
  BandTable a = band_path(cos2d_model(1.0), b, pts, 3), c = band_path(cos2d_model(1.0), b, neg, 3);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK((a.energies[i] - c.energies[i]).cwiseAbs().maxCoeff() < 1e-10);
  // rows equal solve_bands
  BandSolution s = solve_bands(assemble_fiber(cos2d_model(1.0), b, pts[3]), pts[3], 3);
  CHECK((s.energies - a.energies[3]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gauge covariance improves with the cutoff") {
  RVec k = vec2(0.21, 0.34);
  double prev = 1e300;
  for (int N : {3, 4, 5}) {
    PlaneWaveBasis b(2, N);
    RVec e0 = solve_bands(assemble_fiber(cos2d_model(1.0), b, k), k, 3).energies;
    RVec e1 = solve_bands(assemble_fiber(gauge_model(1.0, 0.5), b, k), k, 3).energies;
    double d = (e0 - e1).cwiseAbs().maxCoeff();
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-4);
}
