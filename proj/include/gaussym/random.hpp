// Copyright 2026 The Gaussym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSYM_RANDOM_HPP
#define GAUSSYM_RANDOM_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "gaussym/types.hpp"

namespace gaussym {

using Engine = std::mt19937_64;

// Independent, reproducible stream for one sample index.  Estimators that
// loop over samples draw sample i from substream(seed, i), so partial and
// shared-sample runs see identical per-sample randomness.
inline Engine substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

template <typename Scalar = double>
RealMatrix<Scalar> gaussian_matrix(Index rows, Index cols, Engine& eng) {
  std::normal_distribution<Scalar> normal(0, 1);
  RealMatrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(eng);
  }
  return m;
}

template <typename Scalar = double>
ComplexMatrix<Scalar> gaussian_complex_matrix(Index rows, Index cols,
                                              Engine& eng) {
  std::normal_distribution<Scalar> normal(0, 1);
  ComplexMatrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = std::complex<Scalar>(normal(eng), normal(eng));
    }
  }
  return m;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the R
// diagonal signs folded into Q so the distribution is exactly uniform.
template <typename Scalar = double>
RealMatrix<Scalar> haar_orthogonal(Index n, Engine& eng) {
  Eigen::HouseholderQR<RealMatrix<Scalar>> qr(
      gaussian_matrix<Scalar>(n, n, eng));
  RealMatrix<Scalar> q = qr.householderQ();
  for (Index j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < Scalar(0)) q.col(j) = -q.col(j);
  }
  return q;
}

// Haar-distributed unitary matrix (same construction over C; the R diagonal
// phases are divided out).
template <typename Scalar = double>
ComplexMatrix<Scalar> haar_unitary(Index n, Engine& eng) {
  Eigen::HouseholderQR<ComplexMatrix<Scalar>> qr(
      gaussian_complex_matrix<Scalar>(n, n, eng));
  ComplexMatrix<Scalar> q = qr.householderQ();
  for (Index j = 0; j < n; ++j) {
    const std::complex<Scalar> r = qr.matrixQR()(j, j);
    const Scalar a = std::abs(r);
    if (a > Scalar(0)) q.col(j) *= r / a;
  }
  return q;
}

}  // namespace gaussym

#endif  // GAUSSYM_RANDOM_HPP
