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

#ifndef GAUSSYM_SPECTRAL_HPP
#define GAUSSYM_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaussym/correlation.hpp"
#include "gaussym/types.hpp"

namespace gaussym {

// h(n) = -n log n - (1-n) log(1-n) in nats.  Arguments within domain_slack
// of [0, 1] are clamped onto it; anything further out is rejected.
template <typename Scalar>
Scalar binary_entropy(Scalar n, Scalar domain_slack = Scalar(1e-12)) {
  if (!(n >= -domain_slack) || !(n <= Scalar(1) + domain_slack)) {
    std::ostringstream os;
    os << "occupation " << n << " outside [0, 1]";
    throw DomainError(os.str());
  }
  n = std::clamp(n, Scalar(0), Scalar(1));
  Scalar s = 0;
  if (n > Scalar(0)) s -= n * std::log(n);
  if (n < Scalar(1)) s -= (Scalar(1) - n) * std::log1p(-n);
  return s;
}

// Eigenvalues of the assembled 2ell x 2ell matrix, ascending.  Particle-hole
// symmetry pairs them as {nu, 1 - nu}.
template <typename Scalar>
RealVector<Scalar> occupation_spectrum(const CorrelationMatrix<Scalar>& c) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(
      assemble_full(c), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Von Neumann entropy S = -Tr[rho log rho] = sum over modes of h(nu),
// computed as half the sum of h over the doubled spectrum.  Eigenvalues are
// clipped into [clip_eps, 1 - clip_eps] before the logarithms.
template <typename Scalar>
Scalar entropy(const CorrelationMatrix<Scalar>& c) {
  const RealVector<Scalar> nu = occupation_spectrum(c);
  const Scalar clip = c.tolerances().clip_eps;
  Scalar s = 0;
  for (Index i = 0; i < nu.size(); ++i) {
    const Scalar v = std::clamp(nu[i], clip, Scalar(1) - clip);
    s -= v * std::log(v) + (Scalar(1) - v) * std::log1p(-v);
  }
  return s / Scalar(2);
}

// Entropy of the symmetrised state.  With F = 0 the assembled matrix is
// block diagonal, so this is just the sum of h over the spectrum of G.
template <typename Scalar>
Scalar symmetric_entropy(const CorrelationMatrix<Scalar>& c) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(
      c.normal(), Eigen::EigenvaluesOnly);
  const Scalar clip = c.tolerances().clip_eps;
  Scalar s = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Scalar v =
        std::clamp(es.eigenvalues()[i], clip, Scalar(1) - clip);
    s -= v * std::log(v) + (Scalar(1) - v) * std::log1p(-v);
  }
  return s;
}

// Gaussian asymmetry: relative entropy between the state and its Gaussian
// symmetrisation, which collapses to the entropy difference
// S(symmetrised) - S(state).  Zero iff F = 0; tiny negative round-off is
// clamped to zero.
template <typename Scalar>
Scalar gaussian_asymmetry(const CorrelationMatrix<Scalar>& c) {
  const Scalar d = symmetric_entropy(c) - entropy(c);
  return d < Scalar(0) && d > -Scalar(1e-10) ? Scalar(0) : d;
}

// Relative entropy S(rho || sigma) between two Gaussian states given by
// their correlation matrices,
//
//   S(rho||sigma) = -S(rho) - 1/2 Tr[ C_rho log C_sigma
//                                     + (1 - C_rho) log(1 - C_sigma) ].
//
// Throws SingularSigma when sigma has a mode pinned at occupation 0 or 1
// (beyond clipping) on which rho keeps weight; the divergence is real.
template <typename Scalar>
Scalar relative_entropy_gaussian(const CorrelationMatrix<Scalar>& rho,
                                 const CorrelationMatrix<Scalar>& sigma) {
  if (rho.modes() != sigma.modes()) {
    throw DimensionMismatch("relative entropy needs equal mode counts");
  }
  const Scalar clip = sigma.tolerances().clip_eps;
  const ComplexMatrix<Scalar> c_rho = assemble_full(rho);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(
      assemble_full(sigma));

  Scalar cross = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Scalar d = es.eigenvalues()[i];
    const auto u = es.eigenvectors().col(i);
    const Scalar a = std::real(u.dot(c_rho * u));  // rho weight on the mode
    if (d < clip && a > sigma.tolerances().tol_spec) {
      throw SingularSigma("sigma empty on a mode where rho has weight");
    }
    if (d > Scalar(1) - clip && a < Scalar(1) - sigma.tolerances().tol_spec) {
      throw SingularSigma("sigma full on a mode where rho has a hole");
    }
    const Scalar dc = std::clamp(d, clip, Scalar(1) - clip);
    cross -= a * std::log(dc) + (Scalar(1) - a) * std::log1p(-dc);
  }
  const Scalar value = -entropy(rho) + cross / Scalar(2);
  return value < Scalar(0) && value > -Scalar(1e-9) ? Scalar(0) : value;
}

// Kernel W of the entanglement Hamiltonian in the convention
// rho = exp(K) / Tr exp(K) with K = 1/2 chi^dag W chi, chi = (c, c^dag).
// Cycling the trace in <chi_p^dag chi_q> against exp(K) shows that this K
// reproduces the assembled matrix C = (1 + exp(-W^T))^{-1}, so the kernel
// is the TRANSPOSE of the log-odds, W = log(C (1 - C)^{-1})^T.  The
// transpose is invisible on real correlation data but not for generic
// complex pairing.  A mode at occupation n contributes log(n / (1 - n)).
// clipped_modes counts eigenvalues that had to be pulled off {0, 1} before
// the logarithm, which loses the pure directions of the state.
template <typename Scalar>
struct EntanglementKernel {
  Index ell = 0;
  ComplexMatrix<Scalar> w;
  int clipped_modes = 0;
};

template <typename Scalar>
EntanglementKernel<Scalar> entanglement_hamiltonian(
    const CorrelationMatrix<Scalar>& c) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(assemble_full(c));
  const Scalar clip = c.tolerances().clip_eps;
  RealVector<Scalar> w(es.eigenvalues().size());
  int clipped = 0;
  for (Index i = 0; i < w.size(); ++i) {
    Scalar nu = es.eigenvalues()[i];
    if (nu < clip || nu > Scalar(1) - clip) ++clipped;
    nu = std::clamp(nu, clip, Scalar(1) - clip);
    w[i] = std::log(nu) - std::log1p(-nu);
  }
  EntanglementKernel<Scalar> kernel;
  kernel.ell = c.modes();
  kernel.w = (es.eigenvectors() * w.asDiagonal() *
              es.eigenvectors().adjoint())
                 .transpose();
  kernel.clipped_modes = clipped;
  return kernel;
}

// Inverse of entanglement_hamiltonian: C = (1 + exp(-W^T))^{-1} through
// the eigenbasis of W^T, then the G and F blocks are read off the result.
template <typename Scalar>
CorrelationMatrix<Scalar> correlation_from_kernel(
    const EntanglementKernel<Scalar>& kernel,
    SpectralTolerances<Scalar> tol = {}) {
  if (kernel.ell < 1 || kernel.w.rows() != 2 * kernel.ell ||
      kernel.w.cols() != 2 * kernel.ell) {
    throw DimensionMismatch("kernel must be 2 ell x 2 ell");
  }
  const ComplexMatrix<Scalar> wt = kernel.w.transpose();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(wt);
  RealVector<Scalar> nu(es.eigenvalues().size());
  for (Index i = 0; i < nu.size(); ++i) {
    // Fermi function 1 / (1 + e^{-w}), written to avoid overflow.
    const Scalar w = es.eigenvalues()[i];
    nu[i] = w >= Scalar(0) ? Scalar(1) / (Scalar(1) + std::exp(-w))
                           : std::exp(w) / (Scalar(1) + std::exp(w));
  }
  const ComplexMatrix<Scalar> full = es.eigenvectors() * nu.asDiagonal() *
                                     es.eigenvectors().adjoint();
  const Index ell = kernel.ell;
  // Hermitise/antisymmetrise the blocks to remove eigensolver round-off.
  ComplexMatrix<Scalar> g = full.topLeftCorner(ell, ell);
  g = ((g + g.adjoint()) / Scalar(2)).eval();
  ComplexMatrix<Scalar> f = full.bottomLeftCorner(ell, ell);
  f = ((f - f.transpose()) / Scalar(2)).eval();
  return CorrelationMatrix<Scalar>(std::move(g), std::move(f), tol);
}

// Truncated expansion of the entropy around half filling in the shifted
// matrix X = 2C - 1:
//
//   S ~= ell log 2 - sum_{n=1}^{n_max} Tr[X^{2n}] / (4n(2n - 1)).
//
// Every term is non-negative, so the value decreases monotonically in
// n_max, and it converges to entropy(C) when the spectrum stays away from
// {0, 1}.
template <typename Scalar>
Scalar entropy_series(const CorrelationMatrix<Scalar>& c, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  const RealVector<Scalar> nu = occupation_spectrum(c);
  Scalar s = Scalar(c.modes()) * std::log(Scalar(2));
  for (Index i = 0; i < nu.size(); ++i) {
    const Scalar x2 = (Scalar(2) * nu[i] - Scalar(1)) *
                      (Scalar(2) * nu[i] - Scalar(1));
    Scalar p = x2;
    for (int n = 1; n <= n_max; ++n) {
      s -= p / Scalar(4 * n * (2 * n - 1));
      p *= x2;
    }
  }
  return s;
}

}  // namespace gaussym

#endif  // GAUSSYM_SPECTRAL_HPP
