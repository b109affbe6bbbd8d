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

#ifndef GAUSSYM_QUENCH_HPP
#define GAUSSYM_QUENCH_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "gaussym/correlation.hpp"
#include "gaussym/spectral.hpp"
#include "gaussym/types.hpp"

// Exact finite-chain dynamics for squeezed (pair) initial states
// |psi> ~ exp(sum_{k>0} M(k) c_{-k}^dag c_k^dag) |0> under a quadratic
// translation-invariant band.  Mode occupations are stationary,
// n_k = |M|^2 / (1 + |M|^2); the pair coherence dephases as
// f_k(t) = e^{-2 i t eps_k} M(k) / (1 + |M|^2).  Real-space windows of the
// chain give Toeplitz correlation blocks via momentum sums.

namespace gaussym::quench {

constexpr double kPi = 3.14159265358979323846;

struct Dispersion {
  std::function<double(double)> energy;
  std::function<double(double)> velocity;

  static Dispersion cosine() {
    return {[](double k) { return -std::cos(k); },
            [](double k) { return std::sin(k); }};
  }
};

// Anti-periodic grid k_j = pi (2j + 1 - L) / L, j = 0..L-1, which avoids
// the stationary modes k in {0, pi} and pairs indices as j <-> L-1-j with
// k_{L-1-j} = -k_j.
inline RealVector<double> momentum_grid(Index sites) {
  if (sites < 2 || sites % 2 != 0) {
    throw DomainError("chain length must be even and at least 2");
  }
  RealVector<double> k(sites);
  for (Index j = 0; j < sites; ++j) {
    k[j] = kPi * static_cast<double>(2 * j + 1 - sites) /
           static_cast<double>(sites);
  }
  return k;
}

// Pair amplitude M(k_j) tabulated on the anti-periodic grid.  M must be odd
// in k; oddness is what makes the pairing block antisymmetric.
struct PairState {
  Index sites = 0;
  ComplexVector<double> amplitude;
  Dispersion dispersion;
  bool amplitude_capped = false;

  static PairState make(Index sites,
                        const std::function<std::complex<double>(double)>& m,
                        Dispersion dispersion = Dispersion::cosine()) {
    PairState st;
    st.sites = sites;
    st.dispersion = std::move(dispersion);
    const RealVector<double> k = momentum_grid(sites);
    st.amplitude.resize(sites);
    for (Index j = 0; j < sites; ++j) st.amplitude[j] = m(k[j]);
    st.check_odd();
    return st;
  }

  void check_odd() const {
    const Index l = sites;
    double scale = 1.0;
    for (Index j = 0; j < l; ++j) {
      scale = std::max(scale, std::abs(amplitude[j]));
    }
    for (Index j = 0; j < l; ++j) {
      if (std::abs(amplitude[j] + amplitude[l - 1 - j]) > 1e-10 * scale) {
        throw InvalidState("pair amplitude must be odd: M(-k) = -M(k)");
      }
      if (!std::isfinite(std::abs(amplitude[j]))) {
        throw InvalidState("pair amplitude must be finite");
      }
    }
  }
};

// Stationary occupations n_j = |M_j|^2 / (1 + |M_j|^2) on the grid.
inline RealVector<double> occupations(const PairState& st) {
  RealVector<double> n(st.sites);
  for (Index j = 0; j < st.sites; ++j) {
    const double m2 = std::norm(st.amplitude[j]);
    n[j] = m2 / (1.0 + m2);
  }
  return n;
}

// Tilted ferromagnet under the cosine band:
// |M(k)| = tan^2(theta/2) |cot(k/2)|, written as (1 - cos theta)/(1 + cos
// theta) to stay stable near theta = 0.  At theta = pi the amplitude
// diverges (fully occupied band); it is capped at 1e8 and reported through
// amplitude_capped.
inline PairState tilted_ferro_state(double theta, Index sites) {
  if (!(theta >= 0.0) || !(theta <= kPi)) {
    throw DomainError("tilt angle must lie in [0, pi]");
  }
  PairState st;
  st.sites = sites;
  st.dispersion = Dispersion::cosine();
  const RealVector<double> k = momentum_grid(sites);
  st.amplitude.resize(sites);
  const double c = std::cos(theta);
  bool capped = false;
  for (Index j = 0; j < sites; ++j) {
    const double cot = std::cos(k[j] / 2) / std::sin(k[j] / 2);
    double m = (1.0 + c) > 0.0
                   ? (1.0 - c) / (1.0 + c) * std::abs(cot)
                   : std::numeric_limits<double>::infinity();
    if (!(m <= 1e8)) {
      m = 1e8;
      capped = true;
    }
    st.amplitude[j] = (k[j] > 0 ? m : -m);
  }
  st.amplitude_capped = capped;
  st.check_odd();
  return st;
}

// Correlation matrix of the leftmost `window` sites at time t.  Both blocks
// are Toeplitz, built from one momentum sum per displacement:
//
//   G_xy = (1/L) sum_j e^{i k_j (x-y)} n_j                (time independent)
//   F_xy = (1/L) sum_j e^{i k_j (x-y)} e^{-2 i t eps_j} M_j/(1+|M_j|^2).
//
// Valid by construction (Fourier transform of a valid momentum-space
// state), so the checked constructor is skipped; validate() is exercised on
// sampled snapshots in the tests.
inline CorrelationMatrix<double> correlation_at(
    const PairState& st, double t, Index window,
    SpectralTolerances<double> tol = {}) {
  if (window < 1 || window > st.sites) {
    throw InvalidSubsystem("window must satisfy 1 <= window <= L");
  }
  if (std::isnan(t)) throw DomainError("time must be a number");
  using Cx = std::complex<double>;
  const Index l = st.sites;
  const RealVector<double> k = momentum_grid(l);
  ComplexVector<double> fk(l);
  RealVector<double> nk(l);
  for (Index j = 0; j < l; ++j) {
    const double m2 = std::norm(st.amplitude[j]);
    nk[j] = m2 / (1.0 + m2);
    const double phase = -2.0 * t * st.dispersion.energy(k[j]);
    fk[j] = std::polar(1.0, phase) * st.amplitude[j] / (1.0 + m2);
  }
  ComplexVector<double> gd(window), fd(window);
  for (Index d = 0; d < window; ++d) {
    Cx gs(0, 0), fs(0, 0);
    for (Index j = 0; j < l; ++j) {
      const Cx e = std::polar(1.0, k[j] * static_cast<double>(d));
      gs += e * nk[j];
      fs += e * fk[j];
    }
    gd[d] = gs / static_cast<double>(l);
    fd[d] = fs / static_cast<double>(l);
  }
  ComplexMatrix<double> g(window, window), f(window, window);
  for (Index x = 0; x < window; ++x) {
    for (Index y = 0; y < window; ++y) {
      const Index d = x - y;
      g(x, y) = d >= 0 ? gd[d] : std::conj(gd[-d]);
      f(x, y) = d >= 0 ? fd[d] : -fd[-d];
    }
  }
  for (Index x = 0; x < window; ++x) f(x, x) = Cx(0, 0);
  return CorrelationMatrix<double>::unchecked(std::move(g), std::move(f),
                                              tol);
}

struct CurvePoint {
  double t = 0;
  double asymmetry = 0;
  double entropy = 0;
  double symmetric_entropy = 0;
  double pairing_strength = 0;  // Tr[F F^dag]
};

// Exact asymmetry curve on a time grid.  The symmetrised entropy is time
// independent because G is; it is still recomputed per point so each row is
// self-contained.
inline std::vector<CurvePoint> asymmetry_curve(
    const PairState& st, Index window, const std::vector<double>& times) {
  std::vector<CurvePoint> out;
  out.reserve(times.size());
  for (double t : times) {
    const CorrelationMatrix<double> c = correlation_at(st, t, window);
    CurvePoint p;
    p.t = t;
    p.entropy = entropy(c);
    p.symmetric_entropy = symmetric_entropy(c);
    p.asymmetry = p.symmetric_entropy - p.entropy;
    p.pairing_strength = c.pairing_strength();
    out.push_back(p);
  }
  return out;
}

}  // namespace gaussym::quench

#endif  // GAUSSYM_QUENCH_HPP
