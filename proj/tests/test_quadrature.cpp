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
#include <vector>

#include "gaussym/quadrature.hpp"
#include "gaussym/types.hpp"

using namespace gaussym;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("smooth integrands are integrated to tight tolerance") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("orientation and degenerate intervals") {
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("kinked integrands benefit from declared breakpoints") {
  const auto f = [](double x) { return std::abs(x - 1.0 / 3.0); };
  const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
  CHECK(integrate_piecewise(f, 0.0, 1.0, {1.0 / 3.0}) ==
        doctest::Approx(exact).epsilon(1e-13));
  // The adaptive rule still converges without the breakpoint.
  CHECK(integrate(f, 0.0, 1.0) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("piecewise integration sorts and deduplicates breakpoints") {
  const auto f = [](double x) { return std::abs(std::sin(3.0 * x)); };
  const std::vector<double> pts = {2.0 * kPi / 3.0, kPi / 3.0, kPi / 3.0};
  // integral of |sin 3x| over [0, pi] = 3 * (2/3) = 2
  CHECK(integrate_piecewise(f, 0.0, kPi, pts) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("breakpoints outside the interval are ignored") {
  CHECK(integrate_piecewise([](double x) { return x; }, 0.0, 1.0,
                            {-5.0, 0.5, 7.0}) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("failure to converge raises QuadratureFailure") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-15;
  opt.abs_tol = 0.0;
  opt.max_depth = 3;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); },
                            1e-6, 1.0, opt),
                  QuadratureFailure);
}

TEST_CASE("find_sign_changes locates roots") {
  const auto roots =
      find_sign_changes([](double x) { return std::cos(x); }, 0.0, 2.0 * kPi);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-10));

  const auto none =
      find_sign_changes([](double x) { return 1.0 + x * x; }, -1.0, 1.0);
  CHECK(none.empty());
}
