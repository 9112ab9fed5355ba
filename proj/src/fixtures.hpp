/*
 * fixtures.hpp
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

#ifndef MAGBLOCH_FIXTURES_HPP
#define MAGBLOCH_FIXTURES_HPP

#include "projector.hpp"

namespace magbloch {

// Physical models on the unit hypercubic lattice.
LatticeModel free_model(int dim);
// V(1,0) = V(-1,0) = V(0,1) = V(0,-1) = v
LatticeModel cos2d_model(double v);
// cos2d plus A_1(y) = alpha sin(2 pi y_2): zero flux, nonzero field.
LatticeModel magnetic_sin_model(double v, double alpha);
// cos2d plus the pure gauge A = grad chi, chi = alpha/(2 pi) sin(2 pi y_1) cos(2 pi y_2).
LatticeModel gauge_model(double v, double alpha);
// V(+-1) = v in one dimension.
LatticeModel cos1d_model(double v);
// Two wells per cell along y_1: V = 2 v1 cos(4 pi y_1) + 2 w cos(2 pi y_1) + 2 v2 cos(2 pi y_2).
LatticeModel dimer2d_model(double v1, double w, double v2);
// V(+-e_j) = v for j = 1..4.
LatticeModel cos4d_model(double v);

// Gamma matrices: five anticommuting Hermitian 4 x 4 involutions.
std::array<CMat, 5> dirac_gammas();

// Lower eigenspace of n(kappa) . sigma, n = (sin 2pi k1, sin 2pi k2, mass - cos 2pi k1 - cos 2pi k2).
CMat skyrmion_frame(const RVec& kappa, double mass);
// Lower eigenspace of n(kappa) . Gamma with n = (sin 2pi k_j, mass - sum cos 2pi k_j).
CMat dirac4_frame(const RVec& kappa, double mass);

ProjectorField skyrmion_field(int n, double mass);
ProjectorField dirac4_field(int n, double mass);
ProjectorField constant_field(const KGrid& grid, const CMat& frame);

// (1/4 pi) sum n . (d1 n x d2 n) / |n|^3 h^2 on a res x res grid.
double skyrmion_density_degree(double mass, int res = 512);

// Signed preimage count of a regular value of the normalized 4D Dirac vector,
// near the pole selected by `south`.
int dirac4_mapping_degree(double mass, bool south = true, int seeds = 16);

}  // namespace magbloch

#endif
