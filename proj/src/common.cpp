/*
 * common.cpp
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

#include "common.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace magbloch {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto run = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

double projector_distance(const CMat& X, const CMat& Y) {
  const Eigen::Index m = X.cols() + Y.cols();
  if (m == 0) return 0.0;
  CMat both(X.rows(), m);
  both << X, Y;
  Eigen::HouseholderQR<CMat> qr(both);
  const Eigen::Index k = std::min<Eigen::Index>(m, X.rows());
  CMat Q = qr.householderQ() * CMat::Identity(X.rows(), k);
  CMat rx = Q.adjoint() * X;
  CMat ry = Q.adjoint() * Y;
  CMat diff = rx * rx.adjoint() - ry * ry.adjoint();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::size_t grid_volume(const IVec& dims) {
  std::size_t v = 1;
  for (int n : dims) v *= static_cast<std::size_t>(n);
  return v;
}

std::size_t flat_index(const IVec& idx, const IVec& dims) {
  std::size_t f = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) f = f * dims[a] + idx[a];
  return f;
}

IVec unflat_index(std::size_t flat, const IVec& dims) {
  IVec idx(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    idx[a] = static_cast<int>(flat % dims[a]);
    flat /= dims[a];
  }
  return idx;
}

}  // namespace magbloch
