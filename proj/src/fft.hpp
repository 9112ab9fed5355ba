/*
 * fft.hpp
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

#ifndef MAGBLOCH_FFT_HPP
#define MAGBLOCH_FFT_HPP

#include "common.hpp"

namespace magbloch {

// Unnormalized multidimensional DFT over row-major data:
// out(k) = sum_x in(x) exp(sign * 2 pi i k.x / n). sign is -1 (forward) or +1.
std::vector<cplx> dft(const std::vector<cplx>& in, const IVec& dims, int sign);

}  // namespace magbloch

#endif
