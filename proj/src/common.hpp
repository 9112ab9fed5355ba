/*
 * common.hpp
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

#ifndef MAGBLOCH_COMMON_HPP
#define MAGBLOCH_COMMON_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magbloch {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using IVec = std::vector<int>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxDim = 4;

// Exit-code aligned error categories.
enum class ErrorKind : int {
  Config = 2,
  Assumption = 3,
  Numerical = 4,
  Obstruction = 5,
  Io = 6,
};

class Error : public std::runtime_error {
 public:
  // name is a short stable identifier ("gap-violation", "grid-too-coarse", ...)
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int exit_code() const { return kind_ == ErrorKind::Io ? 4 : static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& name, const std::string& what) {
  throw Error(kind, name, what);
}

// Thread cap for k-grid sweeps; 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n) over the configured worker count.
// Exceptions thrown by body are rethrown (lowest index first).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Operator 2-norm of X X^dagger - Y Y^dagger, computed in the span of [X Y].
double projector_distance(const CMat& X, const CMat& Y);

// Multi-index helpers for row-major grids (last axis fastest).
std::size_t flat_index(const IVec& idx, const IVec& dims);
IVec unflat_index(std::size_t flat, const IVec& dims);
std::size_t grid_volume(const IVec& dims);
// Floor division for a positive divisor.
inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace magbloch

#endif
