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

#include "gaussym/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "gaussym/correlation.hpp"
#include "gaussym/csv.hpp"
#include "gaussym/ensemble.hpp"
#include "gaussym/fcs.hpp"
#include "gaussym/oracle.hpp"
#include "gaussym/qpp.hpp"
#include "gaussym/quadrature.hpp"
#include "gaussym/quench.hpp"
#include "gaussym/random.hpp"
#include "gaussym/serialization.hpp"
#include "gaussym/spectral.hpp"
#include "gaussym/svg.hpp"
#include "gaussym/types.hpp"

namespace gaussym::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> linspace(double lo, double hi, long n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_table(RunReport& rep, const Config& cfg, const std::string& name,
                 const io::Table& t) {
  io::write_csv_file(t, join(cfg.output_dir, name));
  rep.outputs.push_back(name);
}

void write_json_file(RunReport& rep, const Config& cfg,
                     const std::string& name, const json& j) {
  std::ofstream os(join(cfg.output_dir, name), std::ios::binary);
  if (!os) throw FormatError("cannot open " + name + " for writing");
  os << j.dump(2) << "\n";
  rep.outputs.push_back(name);
}

void add_check(RunReport& rep, const std::string& name, bool pass,
               double value, double threshold, std::string detail = {}) {
  rep.checks.push_back({name, pass, value, threshold, std::move(detail)});
}

// --- config parsing -------------------------------------------------------

double need_number(const json& p, const std::string& key, double lo,
                   double hi) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw FormatError("parameter '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!(x >= lo) || !(x <= hi)) {
    throw FormatError("parameter '" + key + "' outside [" +
                      io::format_number(lo) + ", " + io::format_number(hi) +
                      "]");
  }
  return x;
}

long need_integer(const json& p, const std::string& key, long lo, long hi) {
  const auto& v = p.at(key);
  if (!v.is_number_integer()) {
    throw FormatError("parameter '" + key + "' must be an integer");
  }
  const long x = v.get<long>();
  if (x < lo || x > hi) {
    throw FormatError("parameter '" + key + "' outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

void default_number(json& p, const std::string& key, double value) {
  if (!p.contains(key)) p[key] = value;
}

void default_integer(json& p, const std::string& key, long value) {
  if (!p.contains(key)) p[key] = value;
}

std::vector<double> need_number_array(const json& p, const std::string& key,
                                      double lo, double hi,
                                      std::size_t min_size) {
  const auto& v = p.at(key);
  if (!v.is_array() || v.size() < min_size) {
    throw FormatError("parameter '" + key + "' must be an array with at least " +
                      std::to_string(min_size) + " entries");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw FormatError("parameter '" + key + "' must contain numbers");
    }
    const double x = e.get<double>();
    if (!(x >= lo) || !(x <= hi)) {
      throw FormatError("entry of '" + key + "' outside [" +
                        io::format_number(lo) + ", " + io::format_number(hi) +
                        "]");
    }
    out.push_back(x);
  }
  return out;
}

std::vector<long> need_integer_array(const json& p, const std::string& key,
                                     long lo, long hi, std::size_t min_size) {
  const auto& v = p.at(key);
  if (!v.is_array() || v.size() < min_size) {
    throw FormatError("parameter '" + key + "' must be an array with at least " +
                      std::to_string(min_size) + " entries");
  }
  std::vector<long> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) {
      throw FormatError("parameter '" + key + "' must contain integers");
    }
    const long x = e.get<long>();
    if (x < lo || x > hi) {
      throw FormatError("entry of '" + key + "' outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out.push_back(x);
  }
  return out;
}

void reject_unknown(const json& p, std::initializer_list<const char*> keys) {
  for (const auto& item : p.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw FormatError("unknown parameter '" + item.key() + "'");
    }
  }
}

void fill_and_validate(Kind kind, json& p) {
  if (!p.is_object()) throw FormatError("'parameters' must be a JSON object");
  switch (kind) {
    case Kind::mpemba_ferro: {
      if (!p.contains("angles")) p["angles"] = {kPi / 6, kPi / 3};
      default_integer(p, "sites", 400);
      default_integer(p, "window", 40);
      const long window = need_integer(p, "window", 1, 100000);
      default_number(p, "t_max", 1.5 * static_cast<double>(window));
      default_integer(p, "n_times", 33);
      reject_unknown(p, {"angles", "sites", "window", "t_max", "n_times"});
      const auto angles = need_number_array(p, "angles", 1e-9, kPi - 1e-9, 2);
      (void)angles;
      const long sites = need_integer(p, "sites", 2, 200000);
      if (sites % 2 != 0) throw FormatError("parameter 'sites' must be even");
      if (window > sites) {
        throw FormatError("parameter 'window' must not exceed 'sites'");
      }
      need_number(p, "t_max", 1e-12, 1e9);
      need_integer(p, "n_times", 2, 1000000);
      break;
    }
    case Kind::neel_restoration: {
      if (!p.contains("angles")) p["angles"] = {0.0, kPi / 4, kPi / 2};
      default_integer(p, "window", 60);
      const long window = need_integer(p, "window", 1, 1000000);
      default_number(p, "t_max", 1.2 * static_cast<double>(window));
      default_integer(p, "n_times", 25);
      reject_unknown(p, {"angles", "window", "t_max", "n_times"});
      need_number_array(p, "angles", 0.0, kPi / 2, 1);
      need_number(p, "t_max", 1e-12, 1e9);
      need_integer(p, "n_times", 2, 1000000);
      break;
    }
    case Kind::random_ensemble: {
      default_integer(p, "sites", 60);
      const long sites = need_integer(p, "sites", 2, 2000);
      if (!p.contains("windows")) {
        json w = json::array();
        for (long ell = 6; ell <= sites; ell += 6) w.push_back(ell);
        p["windows"] = w;
      }
      default_integer(p, "n_samples", 200);
      reject_unknown(p, {"sites", "windows", "n_samples"});
      need_integer_array(p, "windows", 1, sites, 1);
      need_integer(p, "n_samples", 2, 10000000);
      break;
    }
    case Kind::fcs_variance: {
      default_number(p, "theta", kPi / 3);
      default_integer(p, "sites", 400);
      default_integer(p, "window", 40);
      const long window = need_integer(p, "window", 1, 100000);
      default_number(p, "t_max", 1.2 * static_cast<double>(window));
      default_integer(p, "n_times", 25);
      if (!p.contains("betas")) p["betas"] = {0.1, 0.5, 1.0, 2.0};
      default_integer(p, "max_order", 4);
      default_number(p, "step", 1e-2);
      reject_unknown(p, {"theta", "sites", "window", "t_max", "n_times",
                         "betas", "max_order", "step"});
      need_number(p, "theta", 1e-9, kPi - 1e-9);
      const long sites = need_integer(p, "sites", 2, 200000);
      if (sites % 2 != 0) throw FormatError("parameter 'sites' must be even");
      if (window > sites) {
        throw FormatError("parameter 'window' must not exceed 'sites'");
      }
      need_number(p, "t_max", 1e-12, 1e9);
      need_integer(p, "n_times", 2, 1000000);
      need_number_array(p, "betas", 1e-9, 50.0, 1);
      need_integer(p, "max_order", 1, 8);
      need_number(p, "step", 1e-12, 0.999999);
      break;
    }
    case Kind::verify_suite: {
      default_integer(p, "n_states", 20);
      default_integer(p, "sites", 6);
      default_integer(p, "window", 3);
      default_integer(p, "sigma_trials", 10);
      reject_unknown(p, {"n_states", "sites", "window", "sigma_trials"});
      const long sites = need_integer(p, "sites", 2, 64);
      const long window = need_integer(p, "window", 2, 5);
      if (window > sites) {
        throw FormatError("parameter 'window' must not exceed 'sites'");
      }
      need_integer(p, "n_states", 1, 10000);
      need_integer(p, "sigma_trials", 1, 10000);
      break;
    }
  }
}

// --- shared numeric helpers ------------------------------------------------

// First time at which two sampled curves swap order, by linear interpolation
// between grid points.  Returns nothing when they never swap.
std::optional<double> sampled_crossing(const std::vector<double>& t,
                                       const std::vector<double>& a,
                                       const std::vector<double>& b) {
  const std::size_t n = t.size();
  std::size_t i0 = 0;
  while (i0 < n && a[i0] == b[i0]) ++i0;
  if (i0 >= n) return std::nullopt;
  const double s0 = a[i0] > b[i0] ? 1.0 : -1.0;
  for (std::size_t i = i0 + 1; i < n; ++i) {
    const double d = a[i] - b[i];
    if (d == 0.0) return t[i];
    if (d * s0 < 0.0) {
      const double dp = a[i - 1] - b[i - 1];
      return t[i - 1] + (t[i] - t[i - 1]) * dp / (dp - d);
    }
  }
  return std::nullopt;
}

CorrelationMatrix<double> random_symmetric_state(Index ell, Engine& eng) {
  const ComplexMatrix<double> v = haar_unitary<double>(ell, eng);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  RealVector<double> evs(ell);
  for (Index i = 0; i < ell; ++i) evs[i] = dist(eng);
  ComplexMatrix<double> g = v * evs.asDiagonal() * v.adjoint();
  g = ((g + g.adjoint()) / 2.0).eval();
  ComplexMatrix<double> f = ComplexMatrix<double>::Zero(ell, ell);
  return CorrelationMatrix<double>(std::move(g), std::move(f));
}

// Contracts the spectrum towards 1/2 so truncated series expansions of the
// entropy converge quickly; the result is again a valid state.
CorrelationMatrix<double> soften(const CorrelationMatrix<double>& c,
                                 double factor) {
  const Index ell = c.modes();
  ComplexMatrix<double> g =
      factor * c.normal() +
      (1.0 - factor) / 2.0 * ComplexMatrix<double>::Identity(ell, ell);
  ComplexMatrix<double> f = factor * c.pairing();
  return CorrelationMatrix<double>(std::move(g), std::move(f),
                                   c.tolerances());
}

// --- kind runners ----------------------------------------------------------

void run_mpemba(const Config& cfg, RunReport& rep) {
  const json& p = cfg.parameters;
  const auto angles = p.at("angles").get<std::vector<double>>();
  const Index sites = p.at("sites").get<Index>();
  const Index window = p.at("window").get<Index>();
  const double t_max = p.at("t_max").get<double>();
  const long n_times = p.at("n_times").get<long>();
  const auto times = linspace(0.0, t_max, n_times);

  std::vector<std::vector<double>> exact(angles.size());
  std::vector<std::vector<double>> ballistic(angles.size());
  std::vector<qpp::OccupationProfile> profiles;
  profiles.reserve(angles.size());

  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto st = quench::tilted_ferro_state(angles[i], sites);
    const auto curve = quench::asymmetry_curve(st, window, times);
    io::Table tq{{"t", "dS_gauss", "S_rho", "S_sym"}, {}};
    for (const auto& pt : curve) {
      tq.rows.push_back({pt.t, pt.asymmetry, pt.entropy,
                         pt.symmetric_entropy});
      exact[i].push_back(pt.asymmetry);
    }
    write_table(rep, cfg, "quench_theta" + std::to_string(i) + ".csv", tq);

    profiles.push_back(qpp::tilted_ferro_profile(angles[i]));
    io::Table tb{{"t", "eq21"}, {}};
    for (double t : times) {
      const double v = qpp::qpp_gaussian_asymmetry(
          profiles[i], static_cast<double>(window), t);
      ballistic[i].push_back(v);
      tb.rows.push_back({t, v});
    }
    write_table(rep, cfg, "qpp_theta" + std::to_string(i) + ".csv", tb);

    double maxdev = 0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      maxdev = std::max(maxdev, std::abs(exact[i][j] - ballistic[i][j]));
    }
    const double ref = 0.10 * exact[i][0];
    add_check(rep, "qpp_agreement_theta" + std::to_string(i),
              maxdev <= ref, maxdev, ref,
              "max |exact - ballistic| over the grid");
  }

  io::Table cross{{"theta_a", "theta_b", "t_cross", "t_cross_qpp"}, {}};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      // Order so that the curve that starts higher is 'first'.
      std::size_t hi = i, lo = j;
      if (exact[j][0] > exact[i][0]) std::swap(hi, lo);
      const auto te = sampled_crossing(times, exact[hi], exact[lo]);
      const double w = static_cast<double>(window);
      const auto rep_qpp = qpp::mpemba_diagnosis(
          [&](double t) {
            return qpp::qpp_gaussian_asymmetry(profiles[hi], w, t);
          },
          [&](double t) {
            return qpp::qpp_gaussian_asymmetry(profiles[lo], w, t);
          },
          t_max);
      const double tq = rep_qpp.crossing_time ? *rep_qpp.crossing_time : -1.0;
      cross.rows.push_back({angles[i], angles[j], te ? *te : -1.0, tq});
      const std::string tag =
          std::to_string(i) + "_" + std::to_string(j);
      if (te && rep_qpp.crossing_time) {
        const double dev = std::abs(*te - tq);
        const double tol = 0.15 * *te;
        add_check(rep, "crossing_agreement_" + tag, dev <= tol, dev, tol,
                  "|exact crossing - ballistic crossing|");
      } else {
        add_check(rep, "crossing_agreement_" + tag, false,
                  std::numeric_limits<double>::quiet_NaN(), 0.0,
                  "crossing not found on the grid");
      }
    }
  }
  write_table(rep, cfg, "crossings.csv", cross);
}

void run_neel(const Config& cfg, RunReport& rep) {
  const json& p = cfg.parameters;
  const auto angles = p.at("angles").get<std::vector<double>>();
  const Index window = p.at("window").get<Index>();
  const double t_max = p.at("t_max").get<double>();
  const long n_times = p.at("n_times").get<long>();
  const auto times = linspace(0.0, t_max, n_times);
  const double w = static_cast<double>(window);

  io::Table plateaus{{"theta", "plateau"}, {}};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto prof = qpp::neel_profile(angles[i]);
    io::Table t{{"t", "eq30"}, {}};
    for (double tt : times) {
      t.rows.push_back({tt, qpp::qpp_neel_asymmetry(prof, w, tt)});
    }
    write_table(rep, cfg, "neel_theta" + std::to_string(i) + ".csv", t);
    const double plateau = qpp::qpp_neel_asymmetry(
        prof, w, std::numeric_limits<double>::infinity());
    plateaus.rows.push_back({angles[i], plateau});
    const bool endpoint = std::abs(angles[i]) < 1e-12 ||
                          std::abs(angles[i] - kPi / 2) < 1e-12;
    if (endpoint) {
      const double tol = 1e-8 * w;
      add_check(rep, "restoration_theta" + std::to_string(i),
                plateau < tol, plateau, tol,
                "late-time plateau at a symmetry-restoring angle");
    }
  }
  write_table(rep, cfg, "plateaus.csv", plateaus);
}

void run_ensemble(const Config& cfg, RunReport& rep) {
  const json& p = cfg.parameters;
  const Index sites = p.at("sites").get<Index>();
  const auto windows_l = p.at("windows").get<std::vector<long>>();
  const long n_samples = p.at("n_samples").get<long>();
  std::vector<Index> windows(windows_l.begin(), windows_l.end());

  const auto estimates = ensemble::average_gaussian_asymmetry_sweep(
      sites, windows, n_samples, cfg.seed);

  io::Table t{{"L", "ell", "n_samples", "mean", "std_error", "seed"}, {}};
  io::Table asym{{"ell", "quadratic", "loglimit"}, {}};
  double min_mean = std::numeric_limits<double>::infinity();
  double max_err = 0;
  bool finite = true;
  std::optional<double> full_fraction;
  for (const auto& e : estimates) {
    t.rows.push_back({static_cast<double>(e.chain_length),
                      static_cast<double>(e.window),
                      static_cast<double>(e.n_samples), e.mean, e.std_error,
                      static_cast<double>(e.seed)});
    const double ell = static_cast<double>(e.window);
    asym.rows.push_back({ell, ell * ell / (4.0 * static_cast<double>(sites)),
                         ell * std::log(2.0)});
    min_mean = std::min(min_mean, e.mean);
    max_err = std::max(max_err, e.std_error);
    finite = finite && std::isfinite(e.mean) && std::isfinite(e.std_error);
    if (e.window == sites) {
      full_fraction =
          e.mean / (static_cast<double>(sites) * std::log(2.0));
    }
  }
  write_table(rep, cfg, "ensemble.csv", t);
  write_table(rep, cfg, "asymptotes.csv", asym);

  add_check(rep, "means_nonnegative", min_mean >= -1e-12, min_mean, -1e-12,
            "smallest Monte Carlo mean");
  add_check(rep, "estimates_finite", finite, max_err, 0.0,
            "all means and standard errors are finite");
  if (full_fraction) {
    add_check(rep, "full_window_log_fraction",
              *full_fraction >= 0.85 && *full_fraction <= 1.05,
              *full_fraction, 0.85,
              "mean at ell = L over L log 2, expected in [0.85, 1.05]");
  }
}

void run_fcs(const Config& cfg, RunReport& rep) {
  const json& p = cfg.parameters;
  const double theta = p.at("theta").get<double>();
  const Index sites = p.at("sites").get<Index>();
  const Index window = p.at("window").get<Index>();
  const double t_max = p.at("t_max").get<double>();
  const long n_times = p.at("n_times").get<long>();
  const auto betas = p.at("betas").get<std::vector<double>>();
  const int max_order = p.at("max_order").get<int>();
  const double step = p.at("step").get<double>();

  const auto st = quench::tilted_ferro_state(theta, sites);
  const auto c0 = quench::correlation_at(st, 0.0, window);

  const auto profile = fcs::fcs_profile(c0, betas);
  io::Table tp{{"beta", "logZ", "logZ_sym", "deltaZ"}, {}};
  double min_delta = std::numeric_limits<double>::infinity();
  for (const auto& pt : profile) {
    tp.rows.push_back({pt.beta, pt.log_z, pt.log_z_sym, pt.delta_z});
    min_delta = std::min(min_delta, pt.delta_z);
  }
  write_table(rep, cfg, "fcs_profile.csv", tp);
  add_check(rep, "asymmetry_nonnegative", min_delta >= -1e-10, min_delta,
            -1e-10, "smallest deltaZ across the beta grid");

  const auto cums = fcs::charge_cumulants(c0, max_order, step);
  const auto cums_sym =
      fcs::charge_cumulants(symmetrise(c0), max_order, step);
  io::Table tc{{"order", "value", "value_sym", "difference"}, {}};
  for (int m = 0; m < max_order; ++m) {
    tc.rows.push_back({static_cast<double>(m + 1), cums[m], cums_sym[m],
                       cums[m] - cums_sym[m]});
  }
  write_table(rep, cfg, "cumulants.csv", tc);

  const double trff0 = c0.pairing_strength();
  const double var_diff = fcs::variance_difference(c0, step);
  const double id_tol = 1e-6 * std::max(1.0, trff0);
  add_check(rep, "variance_identity", std::abs(var_diff - trff0) <= id_tol,
            std::abs(var_diff - trff0), id_tol,
            "second-cumulant difference against Tr[F F^dag]");

  const auto times = linspace(0.0, t_max, n_times);
  const auto curve = quench::asymmetry_curve(st, window, times);
  const auto prof = qpp::tilted_ferro_profile(theta);
  io::Table tv{{"t", "trff", "eq42"}, {}};
  double maxdev = 0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double ballistic = qpp::qpp_variance_difference(
        prof, static_cast<double>(window), times[j]);
    tv.rows.push_back({times[j], curve[j].pairing_strength, ballistic});
    maxdev =
        std::max(maxdev, std::abs(curve[j].pairing_strength - ballistic));
  }
  write_table(rep, cfg, "variance.csv", tv);
  const double agree_tol = 0.10 * curve[0].pairing_strength;
  add_check(rep, "variance_agreement", maxdev <= agree_tol, maxdev,
            agree_tol, "max |exact - ballistic| variance difference");

  const double beta_ref = betas.front();
  io::Table tf{{"t", "eq40"}, {}};
  for (std::size_t j = 0; j < times.size(); ++j) {
    tf.rows.push_back(
        {times[j], qpp::qpp_fcs_asymmetry(prof, static_cast<double>(window),
                                          times[j], beta_ref)});
  }
  write_table(rep, cfg, "fcs_ballistic.csv", tf);

  // The ballistic FCS asymmetry opens quadratically in beta with curvature
  // equal to the ballistic variance difference: 2 dZ(beta)/beta^2 -> the
  // eq42 value as beta -> 0.  One Richardson step on the one-sided ratio
  // reaches ~1e-7 relative at h = 1e-3 (beta <= 0 is outside the domain).
  const double h = 1e-3;
  auto ratio = [&](double b) {
    return 2.0 *
           qpp::qpp_fcs_asymmetry(prof, static_cast<double>(window), 0.0,
                                  b) /
           (b * b);
  };
  const double curvature = 2.0 * ratio(h / 2.0) - ratio(h);
  const double var0 =
      qpp::qpp_variance_difference(prof, static_cast<double>(window), 0.0);
  const double link_tol = 1e-5 * std::max(1.0, var0);
  add_check(rep, "fcs_variance_link", std::abs(curvature - var0) <= link_tol,
            std::abs(curvature - var0), link_tol,
            "beta-curvature of the ballistic FCS asymmetry against the "
            "ballistic variance difference at t = 0");
}

void run_verify(const Config& cfg, RunReport& rep) {
  const json& p = cfg.parameters;
  const long n_states = p.at("n_states").get<long>();
  const Index sites = p.at("sites").get<Index>();
  const Index window = p.at("window").get<Index>();
  const long sigma_trials = p.at("sigma_trials").get<long>();

  const oracle::FermionAlgebra alg(window);

  double comp_res = 0, split_res = 0, fcs_res = 0, unitary_res = 0;
  double serial_res = 0, series_res = 0;
  double minimality_gap = std::numeric_limits<double>::infinity();
  const double betas[3] = {0.5, 1.0, 2.0};

  for (long s = 0; s < n_states; ++s) {
    Engine eng = substream(cfg.seed, static_cast<std::uint64_t>(s));
    const auto cov = ensemble::sample_pure_gaussian<double>(sites, eng);
    const Index first = static_cast<Index>(s) % (sites - window + 1);
    const auto c = ensemble::to_dirac(cov, first, window);

    const auto rho = oracle::dense_from_corrmat(c, alg);
    const auto comp = oracle::composition_report(rho, alg);
    comp_res = std::max(
        comp_res, std::max(comp.normal_residual, comp.pairing_residual));

    const auto split = oracle::asymmetry_split_report(c, alg);
    split_res = std::max(split_res, split.residual);

    for (long tr = 0; tr < sigma_trials; ++tr) {
      Engine seng = substream(
          cfg.seed, 1000000u + static_cast<std::uint64_t>(s * sigma_trials +
                                                          tr));
      const auto sigma = random_symmetric_state(window, seng);
      const double rel = relative_entropy_gaussian(c, sigma);
      minimality_gap =
          std::min(minimality_gap, rel - gaussian_asymmetry(c));
    }

    for (double beta : betas) {
      fcs_res = std::max(fcs_res, std::abs(fcs::log_fcs(c, beta) -
                                           oracle::dense_log_fcs(rho, alg,
                                                                 beta)));
    }

    const auto v = haar_unitary<double>(window, eng);
    const auto c2 = conjugate_number_conserving(c, v);
    unitary_res = std::max(
        unitary_res,
        std::abs(gaussian_asymmetry(c2) - gaussian_asymmetry(c)));

    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    io::write_binary(c, buf);
    const auto back = io::read_binary(buf);
    serial_res = std::max(
        serial_res,
        std::max((back.normal() - c.normal()).cwiseAbs().maxCoeff(),
                 (back.pairing() - c.pairing()).cwiseAbs().maxCoeff()));

    const auto soft = soften(c, 0.8);
    series_res = std::max(
        series_res, std::abs(entropy(soft) - entropy_series(soft, 200)));
  }

  add_check(rep, "oracle_composition", comp_res <= 1e-8, comp_res, 1e-8,
            "twirl-then-measure against measure-then-symmetrise");
  add_check(rep, "oracle_ng_split", split_res <= 1e-7, split_res, 1e-7,
            "Gaussian asymmetry = standard asymmetry + twirl non-Gaussianity");
  add_check(rep, "relative_entropy_minimality", minimality_gap >= -1e-8,
            minimality_gap, -1e-8,
            "distance to random symmetric states minus the asymmetry");
  add_check(rep, "fcs_determinant_vs_dense", fcs_res <= 1e-8, fcs_res, 1e-8,
            "determinant generating function against the Fock-space sum");
  add_check(rep, "unitary_invariance", unitary_res <= 1e-8, unitary_res,
            1e-8, "asymmetry drift under number-conserving rotations");
  add_check(rep, "binary_roundtrip", serial_res == 0.0, serial_res, 0.0,
            "binary serialisation round trip is bit exact");
  add_check(rep, "entropy_series_agreement", series_res <= 1e-6, series_res,
            1e-6, "entropy against its truncated series expansion");

  const double quad = integrate(
      [](double x) { return std::sin(x); }, 0.0, kPi);
  add_check(rep, "quadrature_sine", std::abs(quad - 2.0) <= 1e-12,
            std::abs(quad - 2.0), 1e-12, "integral of sin over one arch");
}

}  // namespace

Kind kind_from_string(const std::string& name) {
  static const std::map<std::string, Kind> kMap = {
      {"mpemba_ferro", Kind::mpemba_ferro},
      {"neel_restoration", Kind::neel_restoration},
      {"random_ensemble", Kind::random_ensemble},
      {"fcs_variance", Kind::fcs_variance},
      {"verify_suite", Kind::verify_suite},
  };
  const auto it = kMap.find(name);
  if (it == kMap.end()) {
    throw FormatError("unknown experiment kind '" + name + "'");
  }
  return it->second;
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::mpemba_ferro: return "mpemba_ferro";
    case Kind::neel_restoration: return "neel_restoration";
    case Kind::random_ensemble: return "random_ensemble";
    case Kind::fcs_variance: return "fcs_variance";
    case Kind::verify_suite: return "verify_suite";
  }
  throw FormatError("invalid experiment kind");
}

std::string default_output_dir() {
  const char* env = std::getenv("GAUSSYM_OUTPUT_DIR");
  if (env != nullptr && env[0] != '\0') return env;
  return ".";
}

Config Config::from_json(const json& j) {
  if (!j.is_object()) {
    throw FormatError("experiment config must be a JSON object");
  }
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "kind" && k != "parameters" && k != "output_dir" &&
        k != "seed") {
      throw FormatError("unknown config key '" + k + "'");
    }
  }
  Config cfg;
  try {
    if (!j.contains("kind") || !j.at("kind").is_string()) {
      throw FormatError("config requires a string 'kind'");
    }
    cfg.kind = kind_from_string(j.at("kind").get<std::string>());
    cfg.parameters = j.value("parameters", json::object());
    cfg.output_dir = j.value("output_dir", default_output_dir());
    if (j.contains("seed")) {
      const auto& s = j.at("seed");
      if (!s.is_number_integer() ||
          (s.is_number_integer() && !s.is_number_unsigned() &&
           s.get<long long>() < 0)) {
        throw FormatError("'seed' must be a non-negative integer");
      }
      cfg.seed = s.get<std::uint64_t>();
      cfg.has_seed = true;
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed config: ") + e.what());
  }
  const bool stochastic = cfg.kind == Kind::random_ensemble ||
                          cfg.kind == Kind::verify_suite;
  if (stochastic && !cfg.has_seed) {
    throw FormatError("kind '" + to_string(cfg.kind) +
                      "' requires an explicit 'seed'");
  }
  fill_and_validate(cfg.kind, cfg.parameters);
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open config file " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON in ") + path + ": " +
                      e.what());
  }
  return from_json(j);
}

json report_to_json(const RunReport& report) {
  json checks = json::array();
  json failures = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    if (!c.pass) failures.push_back(c.name);
  }
  return json{{"ok", report.ok()},
              {"checks", checks},
              {"failures", failures},
              {"outputs", report.outputs}};
}

RunReport run(const Config& config) {
  fs::create_directories(config.output_dir);
  RunReport rep;

  json echo{{"kind", to_string(config.kind)},
            {"parameters", config.parameters},
            {"output_dir", config.output_dir}};
  if (config.has_seed) echo["seed"] = config.seed;
  write_json_file(rep, config, "config_echo.json", echo);

  switch (config.kind) {
    case Kind::mpemba_ferro: run_mpemba(config, rep); break;
    case Kind::neel_restoration: run_neel(config, rep); break;
    case Kind::random_ensemble: run_ensemble(config, rep); break;
    case Kind::fcs_variance: run_fcs(config, rep); break;
    case Kind::verify_suite: run_verify(config, rep); break;
  }

  rep.outputs.push_back("report.json");
  {
    // report_to_json sees the final output list, including itself.
    std::ofstream os(join(config.output_dir, "report.json"),
                     std::ios::binary);
    if (!os) throw FormatError("cannot open report.json for writing");
    os << report_to_json(rep).dump(2) << "\n";
  }
  if (!rep.ok()) {
    json failures = json::array();
    for (const auto& c : rep.checks) {
      if (!c.pass) failures.push_back(c.name);
    }
    std::ofstream os(join(config.output_dir, "failures.json"),
                     std::ios::binary);
    os << failures.dump(2) << "\n";
    rep.outputs.push_back("failures.json");
  }
  return rep;
}

void plot_csv(const std::string& csv_path, const std::string& svg_path,
              const std::string& style) {
  io::PlotStyle ps;
  if (style == "lines") {
    ps = io::PlotStyle::lines;
  } else if (style == "points") {
    ps = io::PlotStyle::points;
  } else {
    throw FormatError("unknown plot style '" + style +
                      "' (expected 'lines' or 'points')");
  }
  const io::Table t = io::read_csv_file(csv_path);
  io::render_svg_file(t, svg_path, ps);
}

}  // namespace gaussym::experiment
