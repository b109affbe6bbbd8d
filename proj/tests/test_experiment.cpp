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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "gaussym/csv.hpp"
#include "gaussym/experiment.hpp"
#include "gaussym/types.hpp"

namespace fs = std::filesystem;
using gaussym::FormatError;
using gaussym::experiment::Config;
using gaussym::experiment::Kind;
using gaussym::experiment::RunReport;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("gaussym_exp_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

bool has_check(const RunReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("experiment kinds round-trip through their names") {
  const Kind kinds[] = {Kind::mpemba_ferro, Kind::neel_restoration,
                        Kind::random_ensemble, Kind::fcs_variance,
                        Kind::verify_suite};
  for (Kind k : kinds) {
    CHECK(gaussym::experiment::kind_from_string(
              gaussym::experiment::to_string(k)) == k);
  }
  CHECK_THROWS_AS(gaussym::experiment::kind_from_string("bogus"), FormatError);
}

TEST_CASE("configs fill documented defaults") {
  SUBCASE("staggered restoration") {
    const Config c = Config::from_json({{"kind", "neel_restoration"}});
    CHECK(c.kind == Kind::neel_restoration);
    const auto angles = c.parameters.at("angles").get<std::vector<double>>();
    REQUIRE(angles.size() == 3);
    CHECK(angles[0] == 0.0);
    CHECK(angles[1] == doctest::Approx(kPi / 4));
    CHECK(angles[2] == doctest::Approx(kPi / 2));
    CHECK(c.parameters.at("window").get<long>() == 60);
    CHECK(c.parameters.at("t_max").get<double>() == doctest::Approx(72.0));
    CHECK(c.parameters.at("n_times").get<long>() == 25);
    CHECK(!c.has_seed);
  }
  SUBCASE("tilted ferromagnet") {
    const Config c = Config::from_json({{"kind", "mpemba_ferro"}});
    const auto angles = c.parameters.at("angles").get<std::vector<double>>();
    REQUIRE(angles.size() == 2);
    CHECK(angles[0] == doctest::Approx(kPi / 6));
    CHECK(angles[1] == doctest::Approx(kPi / 3));
    CHECK(c.parameters.at("sites").get<long>() == 400);
    CHECK(c.parameters.at("window").get<long>() == 40);
    CHECK(c.parameters.at("t_max").get<double>() == doctest::Approx(60.0));
    CHECK(c.parameters.at("n_times").get<long>() == 33);
  }
  SUBCASE("charge statistics") {
    const Config c = Config::from_json({{"kind", "fcs_variance"}});
    CHECK(c.parameters.at("theta").get<double>() == doctest::Approx(kPi / 3));
    CHECK(c.parameters.at("sites").get<long>() == 400);
    CHECK(c.parameters.at("window").get<long>() == 40);
    CHECK(c.parameters.at("t_max").get<double>() == doctest::Approx(48.0));
    CHECK(c.parameters.at("betas").get<std::vector<double>>() ==
          std::vector<double>{0.1, 0.5, 1.0, 2.0});
    CHECK(c.parameters.at("max_order").get<int>() == 4);
    CHECK(c.parameters.at("step").get<double>() == doctest::Approx(1e-2));
  }
  SUBCASE("random ensemble windows default to multiples of six") {
    const Config c =
        Config::from_json({{"kind", "random_ensemble"}, {"seed", 1}});
    CHECK(c.parameters.at("sites").get<long>() == 60);
    const auto windows = c.parameters.at("windows").get<std::vector<long>>();
    REQUIRE(windows.size() == 10);
    CHECK(windows.front() == 6);
    CHECK(windows.back() == 60);
    CHECK(c.parameters.at("n_samples").get<long>() == 200);
    CHECK(c.has_seed);
    CHECK(c.seed == 1);
  }
  SUBCASE("self-check suite") {
    const Config c = Config::from_json({{"kind", "verify_suite"}, {"seed", 9}});
    CHECK(c.parameters.at("n_states").get<long>() == 20);
    CHECK(c.parameters.at("sites").get<long>() == 6);
    CHECK(c.parameters.at("window").get<long>() == 3);
    CHECK(c.parameters.at("sigma_trials").get<long>() == 10);
  }
}

TEST_CASE("malformed configs are rejected") {
  auto reject = [](const json& j) {
    CHECK_THROWS_AS(Config::from_json(j), FormatError);
  };
  reject(json{{"kind", "verify_suite"}, {"seed", 1}, {"frobnicate", 2}});
  reject(json{{"parameters", json::object()}});
  reject(json{{"kind", 7}});
  reject(json{{"kind", "bogus"}});
  reject(json{{"kind", "verify_suite"}, {"seed", 1}, {"parameters", 3}});
  // Parameters belonging to a different kind are not silently ignored.
  reject(json{{"kind", "neel_restoration"},
              {"parameters", {{"sites", 100}}}});
  // Stochastic kinds demand an explicit seed.
  reject(json{{"kind", "random_ensemble"}});
  reject(json{{"kind", "verify_suite"}});
  reject(json{{"kind", "verify_suite"}, {"seed", -3}});
  reject(json{{"kind", "verify_suite"}, {"seed", 1.5}});
  // Kind-specific range checks.
  reject(json{{"kind", "mpemba_ferro"}, {"parameters", {{"sites", 401}}}});
  reject(json{{"kind", "mpemba_ferro"},
              {"parameters", {{"sites", 20}, {"window", 24}}}});
  reject(json{{"kind", "mpemba_ferro"},
              {"parameters", {{"angles", {0.0, 1.0}}}}});
  reject(json{{"kind", "mpemba_ferro"}, {"parameters", {{"angles", 0.5}}}});
  reject(json{{"kind", "mpemba_ferro"}, {"parameters", {{"angles", {1.0}}}}});
  reject(json{{"kind", "neel_restoration"},
              {"parameters", {{"angles", {1.6}}}}});
  reject(json{{"kind", "fcs_variance"}, {"parameters", {{"betas", {0.0}}}}});
  reject(json{{"kind", "fcs_variance"}, {"parameters", {{"max_order", 9}}}});
  reject(json{{"kind", "verify_suite"},
              {"seed", 1},
              {"parameters", {{"window", 6}}}});
}

TEST_CASE("default output directory honors the environment") {
  const char* old = std::getenv("GAUSSYM_OUTPUT_DIR");
  const std::string saved = old ? old : "";
  ::setenv("GAUSSYM_OUTPUT_DIR", "/tmp/gaussym_env_probe", 1);
  CHECK(gaussym::experiment::default_output_dir() ==
        "/tmp/gaussym_env_probe");
  ::unsetenv("GAUSSYM_OUTPUT_DIR");
  CHECK(gaussym::experiment::default_output_dir() == ".");
  if (old) ::setenv("GAUSSYM_OUTPUT_DIR", saved.c_str(), 1);
}

TEST_CASE("a small staggered-quench run passes its restoration checks") {
  const fs::path dir = fresh_dir("neel");
  Config cfg = Config::from_json(
      {{"kind", "neel_restoration"},
       {"output_dir", dir.string()},
       {"parameters",
        {{"angles", {0.0, kPi / 4}}, {"window", 12}, {"t_max", 10.0},
         {"n_times", 4}}}});
  const RunReport rep = gaussym::experiment::run(cfg);
  CHECK(rep.ok());
  for (const char* name :
       {"config_echo.json", "neel_theta0.csv", "neel_theta1.csv",
        "plateaus.csv", "report.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }
  CHECK(!fs::exists(dir / "failures.json"));

  // Restoration is only asserted at the symmetry-restoring endpoint angles.
  CHECK(has_check(rep, "restoration_theta0"));
  CHECK(!has_check(rep, "restoration_theta1"));

  const auto curve = gaussym::io::read_csv_file((dir / "neel_theta0.csv").string());
  REQUIRE(curve.header == std::vector<std::string>{"t", "eq30"});
  CHECK(curve.rows.size() == 4);

  const auto plateaus = gaussym::io::read_csv_file((dir / "plateaus.csv").string());
  REQUIRE(plateaus.rows.size() == 2);
  CHECK(plateaus.rows[0][1] < 1e-10);   // theta = 0 restores exactly
  CHECK(plateaus.rows[1][1] > 1e-3);    // theta = pi/4 does not

  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report.at("ok").get<bool>());
  fs::remove_all(dir);
}

TEST_CASE("ensemble runs are deterministic for a fixed seed") {
  auto make_cfg = [](const fs::path& dir, int seed) {
    return Config::from_json(
        {{"kind", "random_ensemble"},
         {"seed", seed},
         {"output_dir", dir.string()},
         {"parameters",
          {{"sites", 10}, {"windows", {2, 4}}, {"n_samples", 20}}}});
  };
  const fs::path a = fresh_dir("ens_a");
  const fs::path b = fresh_dir("ens_b");
  const RunReport ra = gaussym::experiment::run(make_cfg(a, 3));
  const RunReport rb = gaussym::experiment::run(make_cfg(b, 3));
  CHECK(ra.ok());
  CHECK(rb.ok());
  CHECK(has_check(ra, "means_nonnegative"));
  CHECK(has_check(ra, "estimates_finite"));

  const std::string csv_a = slurp(a / "ensemble.csv");
  CHECK(csv_a == slurp(b / "ensemble.csv"));
  CHECK(csv_a.rfind("L,ell,n_samples,mean,std_error,seed", 0) == 0);
  CHECK(fs::exists(a / "asymptotes.csv"));

  const auto table = gaussym::io::read_csv_file((a / "ensemble.csv").string());
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][0] == 10.0);
  CHECK(table.rows[0][1] == 2.0);
  CHECK(table.rows[0][2] == 20.0);
  CHECK(table.rows[0][5] == 3.0);

  // A different seed must actually change the estimates.
  const fs::path c = fresh_dir("ens_c");
  gaussym::experiment::run(make_cfg(c, 4));
  CHECK(csv_a != slurp(c / "ensemble.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("the self-check suite passes at small sizes") {
  const fs::path dir = fresh_dir("verify");
  Config cfg = Config::from_json(
      {{"kind", "verify_suite"},
       {"seed", 5},
       {"output_dir", dir.string()},
       {"parameters",
        {{"n_states", 2}, {"sites", 5}, {"window", 2},
         {"sigma_trials", 2}}}});
  const RunReport rep = gaussym::experiment::run(cfg);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.value);
    CHECK(c.pass);
  }
  for (const char* name :
       {"oracle_composition", "oracle_ng_split", "relative_entropy_minimality",
        "fcs_determinant_vs_dense", "unitary_invariance", "binary_roundtrip",
        "entropy_series_agreement", "quadrature_sine"}) {
    CAPTURE(name);
    CHECK(has_check(rep, name));
  }
  CHECK(fs::exists(dir / "report.json"));
  fs::remove_all(dir);
}

TEST_CASE("a reduced ferromagnet run produces the full artifact set") {
  const fs::path dir = fresh_dir("mpemba");
  Config cfg = Config::from_json(
      {{"kind", "mpemba_ferro"},
       {"output_dir", dir.string()},
       {"parameters",
        {{"angles", {kPi / 6, kPi / 3}}, {"sites", 200}, {"window", 20},
         {"t_max", 30.0}, {"n_times", 16}}}});
  const RunReport rep = gaussym::experiment::run(cfg);
  // Agreement thresholds at this reduced window are exercised by the
  // acceptance suite at production scale; here we pin the artifact contract.
  for (const char* name :
       {"config_echo.json", "quench_theta0.csv", "quench_theta1.csv",
        "qpp_theta0.csv", "qpp_theta1.csv", "crossings.csv", "report.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }
  CHECK(fs::exists(dir / "failures.json") == !rep.ok());

  const auto quench = gaussym::io::read_csv_file((dir / "quench_theta0.csv").string());
  REQUIRE(quench.header ==
          std::vector<std::string>{"t", "dS_gauss", "S_rho", "S_sym"});
  CHECK(quench.rows.size() == 16);
  CHECK(quench.rows[0][0] == 0.0);
  CHECK(quench.rows[15][0] == doctest::Approx(30.0));

  // Both curve families cross: the more-tilted angle relaxes first.
  const auto cross = gaussym::io::read_csv_file((dir / "crossings.csv").string());
  REQUIRE(cross.header == std::vector<std::string>{"theta_a", "theta_b",
                                                   "t_cross", "t_cross_qpp"});
  REQUIRE(cross.rows.size() == 1);
  CHECK(cross.rows[0][2] > 8.0);
  CHECK(cross.rows[0][2] < 16.0);
  CHECK(cross.rows[0][3] == doctest::Approx(12.0).epsilon(0.05));
  fs::remove_all(dir);
}

TEST_CASE("a reduced variance run passes the cumulant identities") {
  const fs::path dir = fresh_dir("fcs");
  Config cfg = Config::from_json(
      {{"kind", "fcs_variance"},
       {"output_dir", dir.string()},
       {"parameters",
        {{"theta", kPi / 3}, {"sites", 240}, {"window", 24}, {"t_max", 12.0},
         {"n_times", 4}, {"betas", {0.5, 1.0}}, {"max_order", 2}}}});
  const RunReport rep = gaussym::experiment::run(cfg);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.value);
    CHECK(c.pass);
  }
  const auto profile = gaussym::io::read_csv_file((dir / "fcs_profile.csv").string());
  REQUIRE(profile.header == std::vector<std::string>{"beta", "logZ",
                                                     "logZ_sym", "deltaZ"});
  CHECK(profile.rows.size() == 2);
  for (const auto& row : profile.rows) CHECK(row[3] >= -1e-10);

  const auto cums = gaussym::io::read_csv_file((dir / "cumulants.csv").string());
  REQUIRE(cums.header == std::vector<std::string>{"order", "value",
                                                  "value_sym", "difference"});
  CHECK(cums.rows.size() == 2);

  const auto var = gaussym::io::read_csv_file((dir / "variance.csv").string());
  REQUIRE(var.header == std::vector<std::string>{"t", "trff", "eq42"});
  CHECK(var.rows.size() == 4);
  // At t = 0 the ballistic column is exactly ell sin^2(theta)/8; the exact
  // windowed Tr[F F^dag] sits below it by a finite-window correction of a
  // few percent (the pairing diagonal of the window vanishes identically).
  CHECK(var.rows[0][2] == doctest::Approx(24.0 * 0.75 / 8.0).epsilon(1e-9));
  CHECK(var.rows[0][1] == doctest::Approx(24.0 * 0.75 / 8.0).epsilon(0.06));

  const auto fb = gaussym::io::read_csv_file((dir / "fcs_ballistic.csv").string());
  REQUIRE(fb.header == std::vector<std::string>{"t", "eq40"});
  REQUIRE(fb.rows.size() == 4);
  CHECK(fb.rows[0][1] > 0.0);
  for (std::size_t i = 1; i < fb.rows.size(); ++i) {
    CHECK(fb.rows[i][1] <= fb.rows[i - 1][1] + 1e-12);  // kernel shrinks
    CHECK(fb.rows[i][1] >= 0.0);
  }
  fs::remove_all(dir);
}

TEST_CASE("reports serialize failures for machines") {
  RunReport r;
  r.checks.push_back({"alpha", true, 1.0, 2.0, "fine"});
  r.checks.push_back({"beta", false, 3.0, 0.5, "bad"});
  r.outputs = {"x.csv"};
  CHECK(!r.ok());
  const json j = gaussym::experiment::report_to_json(r);
  CHECK(j.at("ok").get<bool>() == false);
  REQUIRE(j.at("failures").size() == 1);
  CHECK(j.at("failures")[0].get<std::string>() == "beta");
  REQUIRE(j.at("checks").size() == 2);
  CHECK(j.at("checks")[0].at("name").get<std::string>() == "alpha");
  CHECK(j.at("checks")[1].at("pass").get<bool>() == false);
  CHECK(j.at("checks")[1].at("value").get<double>() == 3.0);
  CHECK(j.at("checks")[1].at("threshold").get<double>() == 0.5);
  CHECK(j.at("checks")[1].at("detail").get<std::string>() == "bad");
  CHECK(j.at("outputs")[0].get<std::string>() == "x.csv");
}

TEST_CASE("plot_csv renders curve files") {
  const fs::path dir = fresh_dir("plot");
  const fs::path csv = dir / "curve.csv";
  {
    std::ofstream os(csv);
    os << "t,eq21\n0,1\n1,0.5\n2,0.25\n";
  }
  const fs::path lines = dir / "lines.svg";
  gaussym::experiment::plot_csv(csv.string(), lines.string(), "lines");
  const std::string svg = slurp(lines);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  const fs::path points = dir / "points.svg";
  gaussym::experiment::plot_csv(csv.string(), points.string(), "points");
  CHECK(slurp(points).find("circle") != std::string::npos);

  CHECK_THROWS_AS(gaussym::experiment::plot_csv(
                      csv.string(), (dir / "x.svg").string(), "bogus"),
                  FormatError);
  fs::remove_all(dir);
}

TEST_CASE("configs load from files with validation") {
  const fs::path dir = fresh_dir("cfgfile");
  CHECK_THROWS_AS(Config::from_file((dir / "missing.json").string()),
                  FormatError);
  const fs::path bad = dir / "bad.json";
  {
    std::ofstream os(bad);
    os << "{nope";
  }
  CHECK_THROWS_AS(Config::from_file(bad.string()), FormatError);

  const fs::path good = dir / "good.json";
  {
    std::ofstream os(good);
    os << R"({"kind": "neel_restoration", "parameters": {"window": 8}})";
  }
  const Config c = Config::from_file(good.string());
  CHECK(c.kind == Kind::neel_restoration);
  CHECK(c.parameters.at("window").get<long>() == 8);
  CHECK(c.parameters.at("t_max").get<double>() == doctest::Approx(9.6));
  fs::remove_all(dir);
}
