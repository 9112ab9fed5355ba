/*
 * fft.cpp
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

#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace magbloch {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& in, const IVec& dims, int sign) {
  std::vector<cplx> work = in, out(in.size());
  std::vector<int> n(dims.begin(), dims.end());
  fftw_plan plan;
  {
    // planner calls are not thread safe
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), reinterpret_cast<fftw_complex*>(work.data()),
                         reinterpret_cast<fftw_complex*>(out.data()), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace magbloch
