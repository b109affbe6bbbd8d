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

#ifndef GAUSSYM_QUADRATURE_HPP
#define GAUSSYM_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussym/types.hpp"

namespace gaussym {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_depth = 48;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1], positive half of the nodes.
// The embedded Gauss rule sits at the even Kronrod nodes.
inline constexpr double kNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
inline constexpr double kWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785,
    0.169004726639267, 0.140653259715525, 0.104790010322250,
    0.063092092629979, 0.022935322010529};
inline constexpr double kGaussWeights[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <typename F>
void kronrod_panel(F&& f, double a, double b, double& k15, double& g7) {
  const double c = (a + b) / 2;
  const double h = (b - a) / 2;
  const double f0 = f(c);
  k15 = kWeights[0] * f0;
  g7 = kGaussWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double fsum = f(c - h * kNodes[i]) + f(c + h * kNodes[i]);
    k15 += kWeights[i] * fsum;
    if (i % 2 == 0) g7 += kGaussWeights[i / 2] * fsum;
  }
  k15 *= h;
  g7 *= h;
}

template <typename F>
double integrate_panel(F&& f, double a, double b,
                       const QuadratureOptions& opt, int depth) {
  double k15 = 0, g7 = 0;
  kronrod_panel(f, a, b, k15, g7);
  const double err = std::abs(k15 - g7);
  if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(k15))) return k15;
  if (depth >= opt.max_depth) {
    throw QuadratureFailure("adaptive bisection exhausted max_depth");
  }
  const double c = (a + b) / 2;
  return integrate_panel(f, a, c, opt, depth + 1) +
         integrate_panel(f, c, b, opt, depth + 1);
}

}  // namespace detail

template <typename F>
double integrate(F&& f, double a, double b, QuadratureOptions opt = {}) {
  if (a == b) return 0.0;
  if (b < a) return -detail::integrate_panel(f, b, a, opt, 0);
  return detail::integrate_panel(f, a, b, opt, 0);
}

// Integrates with forced panel boundaries at the given interior points
// (kernel kinks, support edges).  Points outside (a, b) are ignored.
template <typename F>
double integrate_piecewise(F&& f, double a, double b,
                           std::vector<double> breakpoints,
                           QuadratureOptions opt = {}) {
  if (!(b > a)) return 0.0;
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  double total = 0;
  double lo = a;
  for (double p : breakpoints) {
    const double hi = std::min(std::max(p, a), b);
    if (hi - lo > 1e-13) total += integrate(f, lo, hi, opt);
    lo = std::max(lo, hi);
  }
  if (b - lo > 1e-13) total += integrate(f, lo, b, opt);
  return total;
}

// Roots of a continuous function on [a, b] located by a uniform sign scan
// followed by bisection.  Tangent (non-crossing) zeros between scan nodes
// are missed by construction; callers choose n_scan for their kernels.
template <typename F>
std::vector<double> find_sign_changes(F&& g, double a, double b,
                                      int n_scan = 512) {
  std::vector<double> roots;
  if (!(b > a) || n_scan < 2) return roots;
  const double dx = (b - a) / n_scan;
  double x0 = a, y0 = g(a);
  for (int i = 1; i <= n_scan; ++i) {
    const double x1 = (i == n_scan) ? b : a + i * dx;
    const double y1 = g(x1);
    if (y0 == 0.0) roots.push_back(x0);
    if (y0 * y1 < 0.0) {
      double lo = x0, hi = x1, flo = y0;
      for (int it = 0; it < 100 && hi - lo > 1e-14 * (b - a); ++it) {
        const double mid = (lo + hi) / 2;
        const double fm = g(mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back((lo + hi) / 2);
    }
    x0 = x1;
    y0 = y1;
  }
  if (y0 == 0.0) roots.push_back(b);
  return roots;
}

}  // namespace gaussym

#endif  // GAUSSYM_QUADRATURE_HPP
