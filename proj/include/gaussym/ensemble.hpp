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

#ifndef GAUSSYM_ENSEMBLE_HPP
#define GAUSSYM_ENSEMBLE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gaussym/correlation.hpp"
#include "gaussym/random.hpp"
#include "gaussym/spectral.hpp"
#include "gaussym/types.hpp"

namespace gaussym::ensemble {

// Majorana ordering is site-major: a_{2j} = c_j + c_j^dag and
// a_{2j+1} = i(c_j^dag - c_j), so a site window is a contiguous index
// window.  The covariance is Gamma_pq = <[a_p, a_q]> / (2i), real and
// antisymmetric; Gamma Gamma^T = 1 exactly on pure states.
template <typename Scalar = double>
struct MajoranaCovariance {
  RealMatrix<Scalar> gamma;

  Index sites() const { return gamma.rows() / 2; }

  void validate(Scalar tol = Scalar(1e-10)) const {
    if (gamma.rows() < 2 || gamma.rows() != gamma.cols() ||
        gamma.rows() % 2 != 0) {
      throw InvalidState("covariance must be 2L x 2L");
    }
    const Scalar skew = (gamma + gamma.transpose()).cwiseAbs().maxCoeff();
    if (!(skew <= tol)) {
      throw InvalidState("covariance not antisymmetric");
    }
  }

  Scalar purity_defect() const {
    return (gamma * gamma.transpose() -
            RealMatrix<Scalar>::Identity(gamma.rows(), gamma.rows()))
        .cwiseAbs()
        .maxCoeff();
  }
};

// Covariance of the Fock vacuum: one [[0, 1], [-1, 0]] block per site.
template <typename Scalar = double>
RealMatrix<Scalar> gamma0(Index sites) {
  RealMatrix<Scalar> g = RealMatrix<Scalar>::Zero(2 * sites, 2 * sites);
  for (Index j = 0; j < sites; ++j) {
    g(2 * j, 2 * j + 1) = Scalar(1);
    g(2 * j + 1, 2 * j) = Scalar(-1);
  }
  return g;
}

namespace detail {

// Right-multiplies by gamma0, which only permutes columns and flips signs.
template <typename Scalar>
RealMatrix<Scalar> times_gamma0(const RealMatrix<Scalar>& m) {
  RealMatrix<Scalar> r(m.rows(), m.cols());
  for (Index j = 0; j + 1 < m.cols(); j += 2) {
    r.col(j) = -m.col(j + 1);
    r.col(j + 1) = m.col(j);
  }
  return r;
}

// Per-site Dirac-to-Majorana change of basis on (c_j, c_j^dag) pairs.
template <typename Scalar>
ComplexMatrix<Scalar> omega(Index sites) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> w = ComplexMatrix<Scalar>::Zero(2 * sites, 2 * sites);
  for (Index j = 0; j < sites; ++j) {
    w(2 * j, 2 * j) = C(1, 0);
    w(2 * j, 2 * j + 1) = C(1, 0);
    w(2 * j + 1, 2 * j) = C(0, -1);
    w(2 * j + 1, 2 * j + 1) = C(0, 1);
  }
  return w;
}

// Dirac blocks of the state with Majorana covariance block gamma_w.
// With A = 1 + i Gamma = <a a^T> and T = Omega^{-1} A Omega^{-T}
// = Omega^dag A conj(Omega) / 4, the site-local T holds <c c>, <c^dag c>
// and friends, from which G and F are read off.
template <typename Scalar>
CorrelationMatrix<Scalar> dirac_from_gamma_block(
    const RealMatrix<Scalar>& gamma_w, SpectralTolerances<Scalar> tol) {
  using C = std::complex<Scalar>;
  const Index n = gamma_w.rows() / 2;
  ComplexMatrix<Scalar> a =
      ComplexMatrix<Scalar>::Identity(2 * n, 2 * n) +
      C(0, 1) * gamma_w.template cast<C>();
  const ComplexMatrix<Scalar> w = omega<Scalar>(n);
  const ComplexMatrix<Scalar> t =
      (w.adjoint() * a * w.conjugate()) / Scalar(4);
  ComplexMatrix<Scalar> g(n, n), f(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      g(x, y) = t(2 * x + 1, 2 * y);  // <c_x^dag c_y>
      f(x, y) = t(2 * x, 2 * y);      // <c_x c_y>
    }
  }
  g = ((g + g.adjoint()) / Scalar(2)).eval();
  f = ((f - f.transpose()) / Scalar(2)).eval();
  return CorrelationMatrix<Scalar>::unchecked(std::move(g), std::move(f),
                                              tol);
}

}  // namespace detail

// Haar-random pure Gaussian state on `sites` modes:
// Gamma = O Gamma_0 O^T with O Haar-orthogonal.
template <typename Scalar = double>
MajoranaCovariance<Scalar> sample_pure_gaussian(Index sites, Engine& eng) {
  const RealMatrix<Scalar> o = haar_orthogonal<Scalar>(2 * sites, eng);
  MajoranaCovariance<Scalar> cov;
  cov.gamma = detail::times_gamma0(o) * o.transpose();
  return cov;
}

// Dirac correlation matrix of the reduced state on the site window
// [first, first + count).
template <typename Scalar = double>
CorrelationMatrix<Scalar> to_dirac(const MajoranaCovariance<Scalar>& cov,
                                   Index first, Index count,
                                   SpectralTolerances<Scalar> tol = {}) {
  if (first < 0 || count < 1 || first + count > cov.sites()) {
    throw InvalidSubsystem("site window does not fit in the chain");
  }
  return detail::dirac_from_gamma_block<Scalar>(
      cov.gamma.block(2 * first, 2 * first, 2 * count, 2 * count), tol);
}

// Inverse of to_dirac on a full state; used for round-trip checks.
template <typename Scalar = double>
MajoranaCovariance<Scalar> dirac_to_majorana(
    const CorrelationMatrix<Scalar>& c) {
  using Cx = std::complex<Scalar>;
  const Index n = c.modes();
  ComplexMatrix<Scalar> t(2 * n, 2 * n);
  const auto& g = c.normal();
  const auto& f = c.pairing();
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      t(2 * x, 2 * y) = f(x, y);
      // <c_x c_y^dag> = delta - <c_y^dag c_x> = delta - G(y, x); taking the
      // conjugate instead is invisible for real G only.
      t(2 * x, 2 * y + 1) = (x == y ? Cx(1, 0) : Cx(0, 0)) - g(y, x);
      t(2 * x + 1, 2 * y) = g(x, y);
      t(2 * x + 1, 2 * y + 1) = std::conj(f(y, x));
    }
  }
  const ComplexMatrix<Scalar> w = detail::omega<Scalar>(n);
  const ComplexMatrix<Scalar> a = w * t * w.transpose();
  MajoranaCovariance<Scalar> cov;
  cov.gamma =
      ((a - a.transpose()) / Cx(0, 2)).real();
  cov.gamma = ((cov.gamma - cov.gamma.transpose()) / Scalar(2)).eval();
  return cov;
}

struct EnsembleEstimate {
  Index chain_length = 0;
  Index window = 0;
  long n_samples = 0;
  double mean = 0;
  double std_error = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo mean of the Gaussian asymmetry of the first `ell` sites of a
// Haar-random pure Gaussian state on L sites, with one estimate per window
// size.  Sample i is drawn from substream(seed, i), so every window size
// sees the same states and estimates for different window lists are
// mutually consistent.  Only the needed rows of O are multiplied out.
inline std::vector<EnsembleEstimate> average_gaussian_asymmetry_sweep(
    Index chain_length, const std::vector<Index>& windows, long n_samples,
    std::uint64_t seed) {
  if (chain_length < 1 || n_samples < 2) {
    throw DomainError("need a positive chain and at least two samples");
  }
  for (Index ell : windows) {
    if (ell < 1 || ell > chain_length) {
      throw InvalidSubsystem("window size outside [1, L]");
    }
  }
  std::vector<double> sum(windows.size(), 0), sumsq(windows.size(), 0);
  for (long i = 0; i < n_samples; ++i) {
    Engine eng = substream(seed, static_cast<std::uint64_t>(i));
    const RealMatrix<double> o =
        haar_orthogonal<double>(2 * chain_length, eng);
    const RealMatrix<double> og0 = detail::times_gamma0(o);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const Index m = 2 * windows[w];
      const RealMatrix<double> gamma_w =
          og0.topRows(m) * o.topRows(m).transpose();
      const CorrelationMatrix<double> c =
          detail::dirac_from_gamma_block<double>(gamma_w, {});
      const double v = gaussian_asymmetry(c);
      sum[w] += v;
      sumsq[w] += v * v;
    }
  }
  std::vector<EnsembleEstimate> out(windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const double mean = sum[w] / static_cast<double>(n_samples);
    const double var =
        (sumsq[w] - static_cast<double>(n_samples) * mean * mean) /
        static_cast<double>(n_samples - 1);
    out[w] = {chain_length, windows[w], n_samples, mean,
              std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples)),
              seed};
  }
  return out;
}

inline EnsembleEstimate average_gaussian_asymmetry(Index chain_length,
                                                   Index window,
                                                   long n_samples,
                                                   std::uint64_t seed) {
  return average_gaussian_asymmetry_sweep(chain_length, {window}, n_samples,
                                          seed)[0];
}

}  // namespace gaussym::ensemble

#endif  // GAUSSYM_ENSEMBLE_HPP
