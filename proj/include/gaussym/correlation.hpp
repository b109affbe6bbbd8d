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

#ifndef GAUSSYM_CORRELATION_HPP
#define GAUSSYM_CORRELATION_HPP

#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaussym/types.hpp"

namespace gaussym {

// Two-point data of a fermionic Gaussian state on ell modes in the Dirac
// (particle) basis: G_xy = <c_x^dag c_y> and F_xy = <c_x c_y>.
//
// With the doubled operator vector A = (c_1..c_ell, c_1^dag..c_ell^dag),
// the matrix C_pq = <A_p^dag A_q> assembles from the blocks as
//
//     C = [ G        F^dag   ]
//         [ F        1 - G^T ]
//
// (the <c^dag c^dag> block is F^dag, not F).  C is Hermitian with spectrum
// in [0, 1], and it determines the state completely.  G must be Hermitian,
// F antisymmetric, and the Schur-type physicality condition
// G(1-G) - F^dag F >= 0 must hold; equality holds exactly on pure states.
// Getting the off-diagonal blocks backwards is invisible on real or
// Toeplitz pairing blocks (the two layouts are isospectral there) but
// breaks the spectrum for generic complex F.
template <typename Scalar = double>
class CorrelationMatrix {
 public:
  using Complex = std::complex<Scalar>;
  using Matrix = ComplexMatrix<Scalar>;

  // Checked constructor; throws InvalidState when any invariant fails.
  CorrelationMatrix(Matrix normal, Matrix pairing,
                    SpectralTolerances<Scalar> tol = {})
      : normal_(std::move(normal)), pairing_(std::move(pairing)), tol_(tol) {
    validate();
  }

  // Skips validation.  Intended for construction paths that are valid by
  // construction (momentum-grid sums, principal submatrices, rebuilds from
  // a Hermitian kernel) where the two eigensolves of validate() would
  // dominate the runtime.
  static CorrelationMatrix unchecked(Matrix normal, Matrix pairing,
                                     SpectralTolerances<Scalar> tol = {}) {
    CorrelationMatrix c;
    c.normal_ = std::move(normal);
    c.pairing_ = std::move(pairing);
    c.tol_ = tol;
    return c;
  }

  Index modes() const { return normal_.rows(); }
  const Matrix& normal() const { return normal_; }
  const Matrix& pairing() const { return pairing_; }
  const SpectralTolerances<Scalar>& tolerances() const { return tol_; }

  // Frobenius norm squared of the pairing block, Tr[F F^dag].
  Scalar pairing_strength() const { return pairing_.squaredNorm(); }

  void validate() const {
    tol_.validate();
    const Index ell = normal_.rows();
    if (ell < 1 || normal_.cols() != ell) {
      throw InvalidState("normal block must be square and non-empty");
    }
    if (pairing_.rows() != ell || pairing_.cols() != ell) {
      throw InvalidState("pairing block must match the normal block shape");
    }
    const Scalar herm_defect =
        (normal_ - normal_.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm_defect <= tol_.tol_herm)) {
      throw InvalidState(defect_message("normal block not Hermitian",
                                        herm_defect, tol_.tol_herm));
    }
    const Scalar skew_defect =
        (pairing_ + pairing_.transpose()).cwiseAbs().maxCoeff();
    if (!(skew_defect <= tol_.tol_herm)) {
      throw InvalidState(defect_message("pairing block not antisymmetric",
                                        skew_defect, tol_.tol_herm));
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(assemble_full(*this),
                                             Eigen::EigenvaluesOnly);
    const Scalar lo = es.eigenvalues().minCoeff();
    const Scalar hi = es.eigenvalues().maxCoeff();
    if (!(lo >= -tol_.tol_spec) || !(hi <= Scalar(1) + tol_.tol_spec)) {
      std::ostringstream os;
      os << "occupation spectrum escapes [0, 1]: [" << lo << ", " << hi
         << "] with tol_spec " << tol_.tol_spec;
      throw InvalidState(os.str());
    }

    const Matrix schur = normal_ - normal_ * normal_ -
                         pairing_.adjoint() * pairing_;
    Eigen::SelfAdjointEigenSolver<Matrix> es_schur(schur,
                                                   Eigen::EigenvaluesOnly);
    const Scalar schur_min = es_schur.eigenvalues().minCoeff();
    if (!(schur_min >= -tol_.tol_spec)) {
      throw InvalidState(defect_message("physicality G(1-G) - F^dag F >= 0",
                                        -schur_min, tol_.tol_spec));
    }
  }

 private:
  CorrelationMatrix() = default;

  static std::string defect_message(const char* what, Scalar defect,
                                    Scalar tol) {
    std::ostringstream os;
    os << what << ": defect " << defect << " exceeds " << tol;
    return os.str();
  }

  template <typename S>
  friend ComplexMatrix<S> assemble_full(const CorrelationMatrix<S>&);

  Matrix normal_;
  Matrix pairing_;
  SpectralTolerances<Scalar> tol_;
};

// Builds the full Dirac-basis matrix [[G, F^dag], [F, 1 - G^T]].
template <typename Scalar>
ComplexMatrix<Scalar> assemble_full(const CorrelationMatrix<Scalar>& c) {
  const Index ell = c.modes();
  ComplexMatrix<Scalar> full(2 * ell, 2 * ell);
  full.topLeftCorner(ell, ell) = c.normal_;
  full.topRightCorner(ell, ell) = c.pairing_.adjoint();
  full.bottomLeftCorner(ell, ell) = c.pairing_;
  full.bottomRightCorner(ell, ell) =
      ComplexMatrix<Scalar>::Identity(ell, ell) - c.normal_.transpose();
  return full;
}

// Drops the pairing block.  This is the correlation matrix of the closest
// particle-number-symmetric Gaussian state; it is always valid when the
// input is, so no re-validation happens.
template <typename Scalar>
CorrelationMatrix<Scalar> symmetrise(const CorrelationMatrix<Scalar>& c) {
  using Matrix = typename CorrelationMatrix<Scalar>::Matrix;
  return CorrelationMatrix<Scalar>::unchecked(
      c.normal(), Matrix::Zero(c.modes(), c.modes()), c.tolerances());
}

// Mode transformation c_x -> sum_y V_xy c_y with V unitary.  Because
// G_xy = <c_x^dag c_y> carries the dagger on the row index, the blocks map
// as G -> conj(V) G V^T and F -> V F V^T, i.e. the assembled matrix is
// conjugated by diag(conj(V), V).  (G -> V G V^dag would be the law for the
// transposed definition of G and silently breaks invariants for complex V.)
// Throws NotUnitary if ||V V^dag - 1||_max exceeds the Hermiticity
// tolerance scaled by the dimension.
template <typename Scalar>
CorrelationMatrix<Scalar> conjugate_number_conserving(
    const CorrelationMatrix<Scalar>& c, const ComplexMatrix<Scalar>& v) {
  const Index ell = c.modes();
  if (v.rows() != ell || v.cols() != ell) {
    throw DimensionMismatch("conjugating matrix has wrong shape");
  }
  const Scalar defect =
      (v * v.adjoint() - ComplexMatrix<Scalar>::Identity(ell, ell))
          .cwiseAbs()
          .maxCoeff();
  const Scalar bound = c.tolerances().tol_herm * Scalar(ell);
  if (!(defect <= bound)) {
    std::ostringstream os;
    os << "conjugating matrix is not unitary: defect " << defect
       << " exceeds " << bound;
    throw NotUnitary(os.str());
  }
  return CorrelationMatrix<Scalar>::unchecked(
      v.conjugate() * c.normal() * v.transpose(),
      v * c.pairing() * v.transpose(), c.tolerances());
}

// Reduced state on the window [first, first + count): the principal
// submatrix of both blocks.  Reduction of a Gaussian state is Gaussian, so
// the result is valid by construction.
template <typename Scalar>
CorrelationMatrix<Scalar> restrict_modes(const CorrelationMatrix<Scalar>& c,
                                         Index first, Index count) {
  if (first < 0 || count < 1 || first + count > c.modes()) {
    std::ostringstream os;
    os << "window [" << first << ", " << first + count
       << ") does not fit in " << c.modes() << " modes";
    throw InvalidSubsystem(os.str());
  }
  return CorrelationMatrix<Scalar>::unchecked(
      c.normal().block(first, first, count, count),
      c.pairing().block(first, first, count, count), c.tolerances());
}

// State of the product rho_a (x) rho_b: block-diagonal direct sum.
template <typename Scalar>
CorrelationMatrix<Scalar> direct_sum(const CorrelationMatrix<Scalar>& a,
                                     const CorrelationMatrix<Scalar>& b) {
  using Matrix = typename CorrelationMatrix<Scalar>::Matrix;
  const Index na = a.modes(), nb = b.modes();
  Matrix g = Matrix::Zero(na + nb, na + nb);
  Matrix f = Matrix::Zero(na + nb, na + nb);
  g.topLeftCorner(na, na) = a.normal();
  g.bottomRightCorner(nb, nb) = b.normal();
  f.topLeftCorner(na, na) = a.pairing();
  f.bottomRightCorner(nb, nb) = b.pairing();
  return CorrelationMatrix<Scalar>::unchecked(std::move(g), std::move(f),
                                              a.tolerances());
}

using CorrelationMatrixXd = CorrelationMatrix<double>;

}  // namespace gaussym

#endif  // GAUSSYM_CORRELATION_HPP
