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

#ifndef GAUSSYM_TEST_SUPPORT_HPP
#define GAUSSYM_TEST_SUPPORT_HPP

#include <complex>
#include <utility>

#include "gaussym/correlation.hpp"
#include "gaussym/ensemble.hpp"
#include "gaussym/random.hpp"
#include "gaussym/types.hpp"

namespace gaussym::testing {

// Mixed Gaussian state on `ell` modes: window of a Haar-random pure state
// on a larger chain.
inline CorrelationMatrix<double> random_mixed_state(Index ell, Index sites,
                                                    Engine& eng) {
  const auto cov = ensemble::sample_pure_gaussian<double>(sites, eng);
  return ensemble::to_dirac(cov, 0, ell);
}

// Haar-random pure Gaussian state on all `ell` modes.
inline CorrelationMatrix<double> random_pure_state(Index ell, Engine& eng) {
  const auto cov = ensemble::sample_pure_gaussian<double>(ell, eng);
  return ensemble::to_dirac(cov, 0, ell);
}

// Number-conserving mixed state (F = 0) with spectrum in (lo, hi).
inline CorrelationMatrix<double> random_symmetric_state(Index ell,
                                                        Engine& eng,
                                                        double lo = 0.05,
                                                        double hi = 0.95) {
  const ComplexMatrix<double> v = haar_unitary<double>(ell, eng);
  std::uniform_real_distribution<double> dist(lo, hi);
  RealVector<double> evs(ell);
  for (Index i = 0; i < ell; ++i) evs[i] = dist(eng);
  ComplexMatrix<double> g = v * evs.asDiagonal() * v.adjoint();
  g = ((g + g.adjoint()) / 2.0).eval();
  return CorrelationMatrix<double>(
      std::move(g), ComplexMatrix<double>::Zero(ell, ell));
}

// Maximum absolute difference between the blocks of two states.
inline double block_distance(const CorrelationMatrix<double>& a,
                             const CorrelationMatrix<double>& b) {
  const double dg = (a.normal() - b.normal()).cwiseAbs().maxCoeff();
  const double df = (a.pairing() - b.pairing()).cwiseAbs().maxCoeff();
  return dg > df ? dg : df;
}

}  // namespace gaussym::testing

#endif  // GAUSSYM_TEST_SUPPORT_HPP
