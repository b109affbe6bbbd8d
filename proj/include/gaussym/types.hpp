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

#ifndef GAUSSYM_TYPES_HPP
#define GAUSSYM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaussym {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix handed to a checked constructor is not a valid Gaussian state.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Scalar or parameter outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Requested site window does not fit inside the chain.
class InvalidSubsystem : public Error {
 public:
  using Error::Error;
};

// Conjugating matrix fails the unitarity check.
class NotUnitary : public Error {
 public:
  using Error::Error;
};

// Reference state of a relative entropy has a pure mode where the
// argument state still has weight; the relative entropy diverges.
class SingularSigma : public Error {
 public:
  using Error::Error;
};

// Adaptive integration could not reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// Determinant magnitude fell below the representable floor.
class SingularDeterminant : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil order beyond the supported stability range.
class StencilInstability : public Error {
 public:
  using Error::Error;
};

// Malformed serialized payload, CSV, or configuration input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A cross-check between two computation routes disagreed.
class ValidationFailure : public Error {
 public:
  using Error::Error;
};

// Thresholds used when validating and clipping correlation spectra.
// clip_eps bounds eigenvalues away from {0, 1} before logarithms,
// tol_spec is the allowed spectral leakage outside [0, 1], and
// tol_herm bounds ||G - G^dag||_max and ||F + F^T||_max.
template <typename Scalar = double>
struct SpectralTolerances {
  Scalar tol_herm = Scalar(1e-10);
  Scalar tol_spec = Scalar(1e-8);
  Scalar clip_eps = Scalar(1e-12);

  void validate() const {
    if (!(tol_herm > Scalar(0)) || !(tol_spec > Scalar(0)) ||
        !(clip_eps > Scalar(0))) {
      throw DomainError("spectral tolerances must be strictly positive");
    }
    if (!(clip_eps < tol_spec)) {
      throw DomainError("clip_eps must be smaller than tol_spec");
    }
  }
};

}  // namespace gaussym

#endif  // GAUSSYM_TYPES_HPP
