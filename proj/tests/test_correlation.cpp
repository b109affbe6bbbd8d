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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "gaussym/correlation.hpp"
#include "gaussym/random.hpp"
#include "gaussym/spectral.hpp"
#include "test_support.hpp"

using namespace gaussym;
using Cx = std::complex<double>;

namespace {

ComplexMatrix<double> zeros(Index n) {
  return ComplexMatrix<double>::Zero(n, n);
}

// Two-mode pure paired state: G = n * I, F = f * (antisymmetric unit), pure
// when |f|^2 = n(1-n).
CorrelationMatrix<double> paired_state(double n, double f) {
  ComplexMatrix<double> g = n * ComplexMatrix<double>::Identity(2, 2);
  ComplexMatrix<double> fm = zeros(2);
  fm(0, 1) = f;
  fm(1, 0) = -f;
  return CorrelationMatrix<double>(std::move(g), std::move(fm));
}

}  // namespace

TEST_CASE("construction accepts physical states") {
  CHECK_NOTHROW(CorrelationMatrix<double>(zeros(3), zeros(3)));
  CHECK_NOTHROW(CorrelationMatrix<double>(
      ComplexMatrix<double>::Identity(3, 3), zeros(3)));
  CHECK_NOTHROW(paired_state(0.3, std::sqrt(0.3 * 0.7)));
}

TEST_CASE("construction rejects unphysical or malformed input") {
  SUBCASE("non-Hermitian normal block") {
    ComplexMatrix<double> g = zeros(2);
    g(0, 1) = Cx(0.2, 0.0);  // no matching lower element
    CHECK_THROWS_AS(CorrelationMatrix<double>(g, zeros(2)), InvalidState);
  }
  SUBCASE("non-antisymmetric pairing block") {
    ComplexMatrix<double> f = zeros(2);
    f(0, 1) = Cx(0.1, 0.0);
    f(1, 0) = Cx(0.1, 0.0);
    CHECK_THROWS_AS(
        CorrelationMatrix<double>(0.5 * ComplexMatrix<double>::Identity(2, 2),
                                  f),
        InvalidState);
  }
  SUBCASE("occupation outside [0, 1]") {
    CHECK_THROWS_AS(CorrelationMatrix<double>(
                        1.2 * ComplexMatrix<double>::Identity(2, 2), zeros(2)),
                    InvalidState);
    CHECK_THROWS_AS(CorrelationMatrix<double>(
                        -0.2 * ComplexMatrix<double>::Identity(2, 2),
                        zeros(2)),
                    InvalidState);
  }
  SUBCASE("pairing too strong for the occupation") {
    // G(1-G) - F^dag F = 0.09 - 0.81 < 0.
    ComplexMatrix<double> f = zeros(2);
    f(0, 1) = 0.9;
    f(1, 0) = -0.9;
    CHECK_THROWS_AS(
        CorrelationMatrix<double>(0.1 * ComplexMatrix<double>::Identity(2, 2),
                                  f),
        InvalidState);
  }
  SUBCASE("mismatched block shapes") {
    CHECK_THROWS_AS(CorrelationMatrix<double>(zeros(2), zeros(3)),
                    InvalidState);
  }
  SUBCASE("empty blocks") {
    CHECK_THROWS_AS(CorrelationMatrix<double>(zeros(0), zeros(0)),
                    InvalidState);
  }
}

TEST_CASE("unchecked construction defers validation") {
  ComplexMatrix<double> g = 1.5 * ComplexMatrix<double>::Identity(2, 2);
  auto c = CorrelationMatrix<double>::unchecked(g, zeros(2));
  CHECK(c.modes() == 2);
  CHECK_THROWS_AS(c.validate(), InvalidState);
}

TEST_CASE("assemble_full produces the doubled block matrix") {
  Engine eng = substream(42, 0);
  const auto c = testing::random_mixed_state(3, 6, eng);
  const auto full = assemble_full(c);
  REQUIRE(full.rows() == 6);
  REQUIRE(full.cols() == 6);
  CHECK((full.topLeftCorner(3, 3) - c.normal()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((full.topRightCorner(3, 3) - c.pairing().adjoint())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((full.bottomLeftCorner(3, 3) - c.pairing()).cwiseAbs().maxCoeff() ==
        0.0);
  const ComplexMatrix<double> lower =
      ComplexMatrix<double>::Identity(3, 3) - c.normal().transpose();
  CHECK((full.bottomRightCorner(3, 3) - lower).cwiseAbs().maxCoeff() == 0.0);
  // The assembled matrix is Hermitian.
  CHECK((full - full.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("symmetrise removes the pairing block and is idempotent") {
  Engine eng = substream(43, 0);
  const auto c = testing::random_mixed_state(4, 8, eng);
  REQUIRE(c.pairing_strength() > 0.0);
  const auto s = symmetrise(c);
  CHECK(s.pairing().cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.normal() - c.normal()).cwiseAbs().maxCoeff() == 0.0);
  const auto ss = symmetrise(s);
  CHECK(testing::block_distance(s, ss) == 0.0);
}

TEST_CASE("pairing_strength is the squared Frobenius norm of F") {
  const auto c = paired_state(0.3, std::sqrt(0.3 * 0.7));
  CHECK(c.pairing_strength() == doctest::Approx(2 * 0.3 * 0.7).epsilon(1e-14));
}

TEST_CASE("restrict_modes keeps principal blocks") {
  Engine eng = substream(44, 0);
  const auto c = testing::random_mixed_state(5, 10, eng);
  const auto r = restrict_modes(c, 1, 3);
  CHECK(r.modes() == 3);
  CHECK((r.normal() - c.normal().block(1, 1, 3, 3)).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((r.pairing() - c.pairing().block(1, 1, 3, 3)).cwiseAbs().maxCoeff() ==
        0.0);
  // A window of a physical state is physical.
  CHECK_NOTHROW(r.validate());

  CHECK_THROWS_AS(restrict_modes(c, -1, 2), InvalidSubsystem);
  CHECK_THROWS_AS(restrict_modes(c, 4, 3), InvalidSubsystem);
  CHECK_THROWS_AS(restrict_modes(c, 0, 0), InvalidSubsystem);
}

TEST_CASE("direct_sum concatenates decoupled systems") {
  Engine eng = substream(45, 0);
  const auto a = testing::random_mixed_state(2, 4, eng);
  const auto b = testing::random_mixed_state(3, 6, eng);
  const auto ab = direct_sum(a, b);
  CHECK(ab.modes() == 5);
  CHECK((ab.normal().topLeftCorner(2, 2) - a.normal())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((ab.normal().bottomRightCorner(3, 3) - b.normal())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(ab.normal().topRightCorner(2, 3).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ab.pairing().bottomRightCorner(3, 3) - b.pairing())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_NOTHROW(ab.validate());
}

TEST_CASE("conjugate_number_conserving transforms the blocks covariantly") {
  Engine eng = substream(46, 0);
  const auto c = testing::random_mixed_state(3, 6, eng);
  const auto v = haar_unitary<double>(3, eng);
  const auto d = conjugate_number_conserving(c, v);
  const ComplexMatrix<double> g = v.conjugate() * c.normal() * v.transpose();
  const ComplexMatrix<double> f = v * c.pairing() * v.transpose();
  CHECK((d.normal() - g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((d.pairing() - f).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_NOTHROW(d.validate());
  // The transformation is a unitary conjugation on the assembled matrix,
  // so the entropy data cannot move.
  CHECK(entropy(d) == doctest::Approx(entropy(c)).epsilon(1e-10));
  CHECK(gaussian_asymmetry(d) ==
        doctest::Approx(gaussian_asymmetry(c)).epsilon(1e-9));

  SUBCASE("rejects non-unitary maps") {
    ComplexMatrix<double> w = 1.1 * ComplexMatrix<double>::Identity(3, 3);
    CHECK_THROWS_AS(conjugate_number_conserving(c, w), NotUnitary);
  }
  SUBCASE("rejects shape mismatch") {
    const auto v2 = haar_unitary<double>(2, eng);
    CHECK_THROWS_AS(conjugate_number_conserving(c, v2), DimensionMismatch);
  }
}

TEST_CASE("tolerances must be positive and ordered") {
  SpectralTolerances<double> tol;
  CHECK_NOTHROW(tol.validate());
  tol.clip_eps = 0.0;
  CHECK_THROWS_AS(tol.validate(), DomainError);
  tol = {};
  tol.clip_eps = tol.tol_spec * 10;
  CHECK_THROWS_AS(tol.validate(), DomainError);
}
