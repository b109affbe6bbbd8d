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

#ifndef GAUSSYM_ORACLE_HPP
#define GAUSSYM_ORACLE_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaussym/correlation.hpp"
#include "gaussym/spectral.hpp"
#include "gaussym/types.hpp"

// Exact Fock-space cross-checks on a handful of modes.  Everything here is
// deliberately brute force (dense 2^ell x 2^ell matrices) so it can referee
// the correlation-matrix code paths.

namespace gaussym::oracle {

using DenseMatrix = ComplexMatrix<double>;

// Jordan-Wigner ladder operators.  Mode i occupies bit (modes - 1 - i) of
// the basis index, i.e. mode 0 is the leftmost tensor factor, and the
// string collects a sign from every occupied mode to the left of i.
class FermionAlgebra {
 public:
  explicit FermionAlgebra(Index modes) : modes_(modes) {
    if (modes < 1 || modes > 10) {
      throw DomainError("dense oracle supports 1..10 modes");
    }
    const Index d = dim();
    annihilate_.reserve(modes_);
    for (Index i = 0; i < modes_; ++i) {
      DenseMatrix c = DenseMatrix::Zero(d, d);
      const unsigned p = static_cast<unsigned>(modes_ - 1 - i);
      for (Index b = 0; b < d; ++b) {
        const auto bu = static_cast<std::uint64_t>(b);
        if (!(bu & (std::uint64_t{1} << p))) continue;
        const std::uint64_t left = bu >> (p + 1);  // modes before i
        const double sign = (std::popcount(left) % 2 == 0) ? 1.0 : -1.0;
        c(static_cast<Index>(bu & ~(std::uint64_t{1} << p)), b) = sign;
      }
      annihilate_.push_back(std::move(c));
    }
  }

  Index modes() const { return modes_; }
  Index dim() const { return Index{1} << modes_; }

  const DenseMatrix& annihilate(Index i) const { return annihilate_.at(i); }
  DenseMatrix create(Index i) const { return annihilate_.at(i).adjoint(); }

  // Charge of basis state b: number of occupied modes.
  int charge(Index b) const {
    return std::popcount(static_cast<std::uint64_t>(b));
  }

 private:
  Index modes_;
  std::vector<DenseMatrix> annihilate_;
};

struct DenseState {
  Index modes = 0;
  DenseMatrix rho;

  void validate() const {
    if (rho.rows() != (Index{1} << modes) || rho.rows() != rho.cols()) {
      throw InvalidState("density matrix has wrong dimension");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      throw InvalidState("density matrix not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
        std::abs(rho.trace().imag()) > 1e-10) {
      throw InvalidState("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho,
                                                  Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) {
      throw InvalidState("density matrix not positive semidefinite");
    }
  }
};

// Two-point functions of a dense state: G_ij = Tr[rho c_i^dag c_j],
// F_ij = Tr[rho c_i c_j].  For non-Gaussian rho this is the correlation
// matrix of its closest Gaussian state (the Gaussianisation).
inline CorrelationMatrix<double> corrmat_dense(const DenseState& st,
                                               const FermionAlgebra& alg) {
  const Index n = alg.modes();
  ComplexMatrix<double> g(n, n), f(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      g(i, j) = (st.rho * alg.create(i) * alg.annihilate(j)).trace();
      f(i, j) = (st.rho * alg.annihilate(i) * alg.annihilate(j)).trace();
    }
  }
  g = ((g + g.adjoint()) / 2.0).eval();
  f = ((f - f.transpose()) / 2.0).eval();
  return CorrelationMatrix<double>(std::move(g), std::move(f));
}

// Dense Gaussian state with the given correlation matrix, through the
// quadratic kernel rho ~ exp(1/2 chi^dag W chi) with chi = (c, c^dag).
// Pure directions are clipped at 1e-10 before the kernel logarithm, so the
// round trip is verified to 1e-7 and a mismatch throws ValidationFailure.
inline DenseState dense_from_corrmat(const CorrelationMatrix<double>& c,
                                     const FermionAlgebra& alg) {
  if (alg.modes() != c.modes()) {
    throw DimensionMismatch("algebra and correlation matrix disagree");
  }
  SpectralTolerances<double> tol = c.tolerances();
  tol.clip_eps = 1e-10;
  const CorrelationMatrix<double> cc =
      CorrelationMatrix<double>::unchecked(c.normal(), c.pairing(), tol);
  const EntanglementKernel<double> kernel = entanglement_hamiltonian(cc);

  const Index n = alg.modes();
  std::vector<DenseMatrix> chi;
  chi.reserve(2 * n);
  for (Index i = 0; i < n; ++i) chi.push_back(alg.annihilate(i));
  for (Index i = 0; i < n; ++i) chi.push_back(alg.create(i));
  DenseMatrix k = DenseMatrix::Zero(alg.dim(), alg.dim());
  for (Index a = 0; a < 2 * n; ++a) {
    DenseMatrix y = DenseMatrix::Zero(alg.dim(), alg.dim());
    for (Index b = 0; b < 2 * n; ++b) {
      if (kernel.w(a, b) != std::complex<double>(0, 0)) {
        y += kernel.w(a, b) * chi[b];
      }
    }
    k += 0.5 * chi[a].adjoint() * y;
  }

  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(k);
  RealVector<double> boltz =
      (es.eigenvalues().array() - es.eigenvalues().maxCoeff()).exp();
  boltz /= boltz.sum();
  DenseState st;
  st.modes = n;
  st.rho = es.eigenvectors() *
           boltz.cast<std::complex<double>>().asDiagonal() *
           es.eigenvectors().adjoint();

  const CorrelationMatrix<double> back = corrmat_dense(st, alg);
  const double defect =
      (back.normal() - c.normal()).cwiseAbs().maxCoeff() +
      (back.pairing() - c.pairing()).cwiseAbs().maxCoeff();
  if (!(defect < 1e-7)) {
    throw ValidationFailure("dense state does not reproduce its input");
  }
  return st;
}

// Projection onto charge sectors: zero every element between basis states
// of different particle number.  This is the exact (non-Gaussian)
// symmetrisation.
inline DenseState twirl_dense(const DenseState& st,
                              const FermionAlgebra& alg) {
  DenseState out = st;
  for (Index b = 0; b < st.rho.rows(); ++b) {
    for (Index bp = 0; bp < st.rho.cols(); ++bp) {
      if (alg.charge(b) != alg.charge(bp)) {
        out.rho(b, bp) = std::complex<double>(0, 0);
      }
    }
  }
  return out;
}

inline double dense_entropy(const DenseState& st) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(st.rho,
                                                Eigen::EigenvaluesOnly);
  double s = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > 1e-14) s -= lam * std::log(lam);
  }
  return s;
}

// Tr[rho (log rho - log sigma)] with a support check: sigma eigenvalues
// below 1e-12 carrying rho weight above 1e-10 mean a true divergence.
inline double dense_relative_entropy(const DenseState& rho,
                                     const DenseState& sigma) {
  if (rho.modes != sigma.modes) {
    throw DimensionMismatch("states live on different mode counts");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sigma.rho);
  double cross = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    const auto u = es.eigenvectors().col(i);
    const double w = std::real(u.dot(rho.rho * u));
    if (lam < 1e-12) {
      if (w > 1e-10) {
        throw SingularSigma("reference state lacks support");
      }
      continue;
    }
    cross += w * std::log(lam);
  }
  const double value = -dense_entropy(rho) - cross;
  return value < 0 && value > -1e-9 ? 0.0 : value;
}

// Entanglement asymmetry S(twirl(rho)) - S(rho); equals the relative
// entropy between rho and its twirl because twirling is a pinching.
inline double standard_asymmetry_dense(const DenseState& st,
                                       const FermionAlgebra& alg) {
  return dense_entropy(twirl_dense(st, alg)) - dense_entropy(st);
}

inline double dense_log_fcs(const DenseState& st, const FermionAlgebra& alg,
                            double beta) {
  double z = 0;
  for (Index b = 0; b < st.rho.rows(); ++b) {
    z += std::exp(beta * alg.charge(b)) * std::real(st.rho(b, b));
  }
  if (!(z > 0)) throw SingularDeterminant("generating function is not > 0");
  return std::log(z);
}

// Exact charge cumulants of the dense state from its sector weights, for
// refereeing the finite-difference cumulants.
inline std::vector<double> dense_charge_cumulants(const DenseState& st,
                                                  const FermionAlgebra& alg,
                                                  int max_order) {
  if (max_order < 1) throw DomainError("cumulant order must be >= 1");
  std::vector<double> weight(alg.modes() + 1, 0.0);
  for (Index b = 0; b < st.rho.rows(); ++b) {
    weight[alg.charge(b)] += std::real(st.rho(b, b));
  }
  // Raw moments, then cumulants by the standard recursion
  // kappa_m = mu_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j mu_{m-j}.
  std::vector<double> mu(max_order + 1, 0.0);
  mu[0] = 1.0;
  for (int m = 1; m <= max_order; ++m) {
    for (std::size_t q = 0; q < weight.size(); ++q) {
      mu[m] += weight[q] * std::pow(static_cast<double>(q), m);
    }
  }
  std::vector<double> kappa(max_order + 1, 0.0);
  for (int m = 1; m <= max_order; ++m) {
    double acc = mu[m];
    double binom = 1.0;  // C(m-1, j-1) accumulated over j
    for (int j = 1; j < m; ++j) {
      acc -= binom * kappa[j] * mu[m - j];
      binom = binom * static_cast<double>(m - j) / static_cast<double>(j);
    }
    kappa[m] = acc;
  }
  return {kappa.begin() + 1, kappa.end()};
}

// The two routes to a symmetric Gaussian description must meet: reading
// two-point functions off the twirled state equals dropping the pairing
// block of the two-point functions of the state itself.
struct CompositionReport {
  double normal_residual = 0;
  double pairing_residual = 0;
};

inline CompositionReport composition_report(const DenseState& st,
                                            const FermionAlgebra& alg) {
  const CorrelationMatrix<double> via_twirl =
      corrmat_dense(twirl_dense(st, alg), alg);
  const CorrelationMatrix<double> via_blocks =
      symmetrise(corrmat_dense(st, alg));
  CompositionReport rep;
  rep.normal_residual =
      (via_twirl.normal() - via_blocks.normal()).cwiseAbs().maxCoeff();
  rep.pairing_residual = via_twirl.pairing().cwiseAbs().maxCoeff();
  return rep;
}

// For a Gaussian state, the Gaussian asymmetry splits as
//   dS_G = dS + NG(twirl(rho)),
// where dS is the standard asymmetry and NG(sigma) is the relative entropy
// between sigma and the Gaussian state sharing its two-point functions
// (which here is the Gaussian symmetrisation).
struct AsymmetrySplitReport {
  double gaussian_asymmetry = 0;
  double standard_asymmetry = 0;
  double twirl_non_gaussianity = 0;
  double residual = 0;
};

inline AsymmetrySplitReport asymmetry_split_report(
    const CorrelationMatrix<double>& c, const FermionAlgebra& alg) {
  const DenseState rho = dense_from_corrmat(c, alg);
  const DenseState tw = twirl_dense(rho, alg);
  AsymmetrySplitReport rep;
  rep.gaussian_asymmetry = gaussian_asymmetry(c);
  rep.standard_asymmetry = standard_asymmetry_dense(rho, alg);
  rep.twirl_non_gaussianity = symmetric_entropy(c) - dense_entropy(tw);
  rep.residual = std::abs(rep.gaussian_asymmetry - rep.standard_asymmetry -
                          rep.twirl_non_gaussianity);
  return rep;
}

}  // namespace gaussym::oracle

#endif  // GAUSSYM_ORACLE_HPP
