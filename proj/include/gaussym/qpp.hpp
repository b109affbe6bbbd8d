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

#ifndef GAUSSYM_QPP_HPP
#define GAUSSYM_QPP_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaussym/quadrature.hpp"
#include "gaussym/spectral.hpp"
#include "gaussym/types.hpp"

// Ballistic quasiparticle asymptotics.  Entangled pairs (k, -k) created by
// the quench spread with velocity v_k; a pair straddling the boundary of a
// window of ell sites contributes entropy density s(n_k), which yields
// min/max counting kernels:
//
//   entropy(t)   = int dk/2pi min(2|v_k| t, ell) s(n_k)
//   asymmetry(t) = int dk/2pi max(ell - 2|v_k| t, 0) s(n_k)
//
// The two kernels sum to ell, so entropy + asymmetry = ell * s_density.

namespace gaussym::qpp {

constexpr double kPi = 3.14159265358979323846;

// Mode occupation n(k) and group velocity v(k) on k in [-pi, pi].
// `kinks` lists interior points where n or |v| is not smooth so the
// integrator can split panels there.
struct OccupationProfile {
  std::function<double(double)> occupation;
  std::function<double(double)> velocity;
  std::vector<double> kinks;
  std::string label;
};

namespace detail {

// Occupations produced by quench symbols can overshoot [0, 1] by round-off
// (and, for the staggered-state symbol below, by construction near |k| =
// pi); the entropy density of such modes is zero, which the clamp encodes.
inline double entropy_of_occupation(double n) {
  if (n <= 0.0 || n >= 1.0) return 0.0;
  return -n * std::log(n) - (1.0 - n) * std::log1p(-n);
}

// Panel boundaries for the counting kernels at time t: velocity zeros
// (|v| kinks), profile kinks, and the support edges 2|v(k)| t = ell.
inline std::vector<double> kernel_breakpoints(
    const std::function<double(double)>& velocity,
    const std::vector<double>& kinks, double ell, double t) {
  std::vector<double> pts = kinks;
  for (double r : find_sign_changes(velocity, -kPi, kPi)) pts.push_back(r);
  if (t > 0.0 && std::isfinite(t)) {
    auto edge = [&](double k) {
      return 2.0 * std::abs(velocity(k)) * t - ell;
    };
    for (double r : find_sign_changes(edge, -kPi, kPi)) pts.push_back(r);
  }
  return pts;
}

}  // namespace detail

// Asymptotic entropy density: int dk/2pi s(n_k).
inline double entropy_density(const OccupationProfile& p,
                              QuadratureOptions opt = {}) {
  auto f = [&](double k) {
    return detail::entropy_of_occupation(p.occupation(k)) / (2.0 * kPi);
  };
  return integrate_piecewise(f, -kPi, kPi, p.kinks, opt);
}

inline void require_time_and_window(double ell, double t) {
  if (!(ell > 0)) throw DomainError("window size must be positive");
  if (std::isnan(t) || t < 0) throw DomainError("time must be >= 0");
}

inline double qpp_entropy(const OccupationProfile& p, double ell, double t,
                          QuadratureOptions opt = {}) {
  require_time_and_window(ell, t);
  if (std::isinf(t)) return ell * entropy_density(p, opt);
  auto f = [&](double k) {
    const double filled = std::min(2.0 * std::abs(p.velocity(k)) * t, ell);
    return filled * detail::entropy_of_occupation(p.occupation(k)) /
           (2.0 * kPi);
  };
  return integrate_piecewise(
      f, -kPi, kPi, detail::kernel_breakpoints(p.velocity, p.kinks, ell, t),
      opt);
}

inline double qpp_gaussian_asymmetry(const OccupationProfile& p, double ell,
                                     double t, QuadratureOptions opt = {}) {
  require_time_and_window(ell, t);
  if (std::isinf(t)) return 0.0;
  auto f = [&](double k) {
    const double remaining =
        std::max(ell - 2.0 * std::abs(p.velocity(k)) * t, 0.0);
    return remaining * detail::entropy_of_occupation(p.occupation(k)) /
           (2.0 * kPi);
  };
  return integrate_piecewise(
      f, -kPi, kPi, detail::kernel_breakpoints(p.velocity, p.kinks, ell, t),
      opt);
}

// Proxy for "t -> inf" when a caller insists on a finite time: every mode
// with |v| = max|v| has emptied its kernel long before 10x the crossing
// time of the window.
inline double saturation_time(const OccupationProfile& p, double ell) {
  double vmax = 0;
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    vmax = std::max(vmax, std::abs(p.velocity(-kPi + 2 * kPi * i / n)));
  }
  if (vmax <= 0) throw DomainError("profile has no moving modes");
  return 10.0 * ell / (2.0 * vmax);
}

// Staggered ferromagnet tilted by theta, evolved with the cosine band
// eps_k = -cos k.  Stable closed form of the stationary occupation,
//
//   n_k = (1 - cos theta)^2 cos^2(k/2) / (1 + cos^2 theta - 2 cos theta cos k),
//
// which interpolates between the empty band (theta = 0) and the full band
// (theta = pi) and equals (1 + cos k)/2 at theta = pi/2.
inline double tilted_ferro_occupation(double theta, double k) {
  const double c = std::cos(theta);
  const double den = 1.0 + c * c - 2.0 * c * std::cos(k);
  if (den < 1e-300) return c > 0 ? 0.0 : 1.0;  // k -> 0 at theta = 0, etc.
  const double ck2 = std::cos(k / 2);
  return (1.0 - c) * (1.0 - c) * ck2 * ck2 / den;
}

inline OccupationProfile tilted_ferro_profile(double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi)) {
    throw DomainError("tilt angle must lie in [0, pi]");
  }
  OccupationProfile p;
  p.occupation = [theta](double k) {
    return tilted_ferro_occupation(theta, k);
  };
  p.velocity = [](double k) { return std::sin(k); };
  p.kinks = {0.0};  // |v| kink
  p.label = "tilted_ferro";
  return p;
}

// Staggered (two-site cell) initial state quenched with the cosine band.
// The symbol functions g11, g12, f12 of the state determine three
// occupation-like functions: n_infinity from the dephased symmetrised
// state, n_initial from the t = 0 symmetrised state, and n_full from the
// full state.  Quasiparticles live on the folded zone, v_k = sin(k/2).
//
// n_full = (1 + g12 + f12)/2 exits [0, 1] near |k| = pi for intermediate
// tilts (up to (1 + sqrt 2)/2 at theta = pi/4); its entropy density is
// evaluated with the out-of-range clamp of entropy_of_occupation.
struct NeelProfile {
  double theta = 0;
  std::function<double(double)> n_infinity;
  std::function<double(double)> n_initial;
  std::function<double(double)> n_full;
  std::function<double(double)> velocity;
  std::vector<double> kinks;
};

inline NeelProfile neel_profile(double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi / 2)) {
    throw DomainError("staggered tilt angle must lie in [0, pi/2]");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto den = [c](double k) {
    return 1.0 + 2.0 * std::cos(k) * c * c + c * c * c * c;
  };
  auto g11 = [c, s, den](double k) {
    const double d = den(k);
    if (std::abs(d) < 1e-300) return -c;  // theta = 0, k = pi limit
    return -c - c * s * s * (std::cos(k) + c * c) / d;
  };
  auto g12 = [c, den](double k) {
    const double d = den(k);
    if (std::abs(d) < 1e-300) return 0.0;
    return -std::cos(k / 2) * (1.0 - c * c * c * c) / d;
  };
  auto f12 = [c, s, den](double k) {
    const double d = den(k);
    if (std::abs(d) < 1e-300) return 0.0;
    return -c * s * s * std::cos(k) / d;
  };
  NeelProfile p;
  p.theta = theta;
  p.n_infinity = [g12](double k) { return (1.0 + g12(k)) / 2.0; };
  p.n_initial = [g11, g12](double k) {
    return (1.0 + std::hypot(g11(k), g12(k))) / 2.0;
  };
  p.n_full = [g12, f12](double k) {
    return (1.0 + g12(k) + f12(k)) / 2.0;
  };
  p.velocity = [](double k) { return std::sin(k / 2); };
  p.kinks = {0.0};
  return p;
}

// Asymmetry of the staggered quench: shared pairs carry the difference
// between the dephased-symmetrised and full entropy densities, pairs still
// inside the window carry the t = 0 symmetrised density,
//
//   dS(t) = int dk/2pi min(2|v|t, ell) (s(n_inf) - s(n_full))
//         + int dk/2pi max(ell - 2|v|t, 0) s(n_init).
//
// The first term survives as t -> inf unless f12 == 0 (theta in {0, pi/2}),
// which is the lack-of-restoration plateau.
inline double qpp_neel_asymmetry(const NeelProfile& p, double ell,
                                      double t, QuadratureOptions opt = {}) {
  require_time_and_window(ell, t);
  std::vector<double> pts =
      detail::kernel_breakpoints(p.velocity, p.kinks, ell, t);
  // Clamp kinks of s(n_full) where n_full crosses 0 or 1.
  for (double r : find_sign_changes(p.n_full, -kPi, kPi)) pts.push_back(r);
  for (double r : find_sign_changes(
           [&](double k) { return 1.0 - p.n_full(k); }, -kPi, kPi)) {
    pts.push_back(r);
  }
  auto shared = [&](double k) {
    const double filled =
        std::isinf(t) ? ell
                      : std::min(2.0 * std::abs(p.velocity(k)) * t, ell);
    return filled *
           (detail::entropy_of_occupation(p.n_infinity(k)) -
            detail::entropy_of_occupation(p.n_full(k))) /
           (2.0 * kPi);
  };
  double value = integrate_piecewise(shared, -kPi, kPi, pts, opt);
  if (!std::isinf(t)) {
    auto contained = [&](double k) {
      const double remaining =
          std::max(ell - 2.0 * std::abs(p.velocity(k)) * t, 0.0);
      return remaining * detail::entropy_of_occupation(p.n_initial(k)) /
             (2.0 * kPi);
    };
    value += integrate_piecewise(contained, -kPi, kPi, pts, opt);
  }
  return value;
}

// Charge-generating-function asymmetry density
//   z_beta(n) = log[(1 - n + n e^{2 beta}) / (1 - n + n e^{beta})^2]
// in the beta-stable form log(n + (1-n)e^{-2 beta}) - 2 log(n + (1-n)e^{-beta});
// z >= 0 with equality iff n in {0, 1}.
inline double z_beta(double n, double beta) {
  if (!(beta > 0)) throw DomainError("counting parameter beta must be > 0");
  n = std::clamp(n, 0.0, 1.0);
  if (n == 0.0 || n == 1.0) return 0.0;
  return std::log(n + (1.0 - n) * std::exp(-2.0 * beta)) -
         2.0 * std::log(n + (1.0 - n) * std::exp(-beta));
}

// FCS asymmetry within the pair picture: only pairs fully inside the
// window contribute, each with density z_beta / 2 (hence dk/4pi).
inline double qpp_fcs_asymmetry(const OccupationProfile& p, double ell,
                                double t, double beta,
                                QuadratureOptions opt = {}) {
  require_time_and_window(ell, t);
  if (!(beta > 0)) throw DomainError("counting parameter beta must be > 0");
  if (std::isinf(t)) return 0.0;
  auto f = [&](double k) {
    const double remaining =
        std::max(ell - 2.0 * std::abs(p.velocity(k)) * t, 0.0);
    return remaining * z_beta(p.occupation(k), beta) / (4.0 * kPi);
  };
  return integrate_piecewise(
      f, -kPi, kPi, detail::kernel_breakpoints(p.velocity, p.kinks, ell, t),
      opt);
}

// Charge-variance excess of the state over its symmetrisation,
// d<Q^2>_c(t) = int dk/2pi max(ell - 2|v|t, 0) n(1-n); this is the second
// beta-derivative of the FCS asymmetry at beta = 0.
inline double qpp_variance_difference(const OccupationProfile& p, double ell,
                                      double t, QuadratureOptions opt = {}) {
  require_time_and_window(ell, t);
  if (std::isinf(t)) return 0.0;
  auto f = [&](double k) {
    const double remaining =
        std::max(ell - 2.0 * std::abs(p.velocity(k)) * t, 0.0);
    const double n = std::clamp(p.occupation(k), 0.0, 1.0);
    return remaining * n * (1.0 - n) / (2.0 * kPi);
  };
  return integrate_piecewise(
      f, -kPi, kPi, detail::kernel_breakpoints(p.velocity, p.kinks, ell, t),
      opt);
}

// Crossing diagnosis for a pair of asymmetry curves a(t), b(t) produced by
// the same window.  The predicted crossing of the initially larger curve
// below the other ("the more asymmetric state relaxes first") is located by
// scan plus bisection; no crossing leaves crossing_time empty.
struct MpembaReport {
  double first_at_zero = 0;
  double second_at_zero = 0;
  std::optional<double> crossing_time;
  bool mpemba = false;
};

inline MpembaReport mpemba_diagnosis(
    const std::function<double(double)>& a,
    const std::function<double(double)>& b, double t_max,
    int n_scan = 200) {
  MpembaReport rep;
  rep.first_at_zero = a(0.0);
  rep.second_at_zero = b(0.0);
  auto diff = [&](double t) { return a(t) - b(t); };
  const double d0 = diff(0.0);
  double t0 = 0.0, y0 = d0;
  for (int i = 1; i <= n_scan; ++i) {
    const double t1 = t_max * i / n_scan;
    const double y1 = diff(t1);
    if (y0 * y1 < 0.0) {
      double lo = t0, hi = t1, flo = y0;
      for (int it = 0; it < 80 && hi - lo > 1e-10 * t_max; ++it) {
        const double mid = (lo + hi) / 2;
        const double fm = diff(mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      rep.crossing_time = (lo + hi) / 2;
      break;
    }
    t0 = t1;
    y0 = y1;
  }
  rep.mpemba = rep.crossing_time.has_value() && d0 != 0.0;
  return rep;
}

}  // namespace gaussym::qpp

#endif  // GAUSSYM_QPP_HPP
