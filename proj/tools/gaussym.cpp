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

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "gaussym/experiment.hpp"
#include "gaussym/types.hpp"

namespace {

namespace ex = gaussym::experiment;

int report_outcome(const ex::RunReport& rep, const std::string& dir) {
  for (const auto& c : rep.checks) {
    std::printf("[%s] %s (value %.6g, threshold %.6g)\n",
                c.pass ? "pass" : "FAIL", c.name.c_str(), c.value,
                c.threshold);
  }
  std::printf("%zu output file(s) in %s\n", rep.outputs.size(), dir.c_str());
  if (!rep.ok()) {
    std::printf("checks failed; see %s/failures.json\n", dir.c_str());
    return 1;
  }
  return 0;
}

int run_config(const std::string& path, const std::string& output_dir) {
  ex::Config cfg = ex::Config::from_file(path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  const ex::RunReport rep = ex::run(cfg);
  return report_outcome(rep, cfg.output_dir);
}

int run_verify(std::uint64_t seed, const std::string& output_dir) {
  ex::Config cfg;
  cfg.kind = ex::Kind::verify_suite;
  cfg.parameters = nlohmann::json::object();
  cfg.seed = seed;
  cfg.has_seed = true;
  cfg.output_dir =
      output_dir.empty() ? ex::default_output_dir() : output_dir;
  // Route through the JSON front end so defaults and validation match
  // config-file runs exactly.
  nlohmann::json j{{"kind", "verify_suite"},
                   {"seed", seed},
                   {"output_dir", cfg.output_dir}};
  cfg = ex::Config::from_json(j);
  const ex::RunReport rep = ex::run(cfg);
  return report_outcome(rep, cfg.output_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fermionic Gaussian state toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--output-dir", output_dir,
                  "override the output directory");

  std::uint64_t seed = 1;
  std::string verify_dir;
  auto* verify =
      app.add_subcommand("verify", "run the self-check suite");
  verify->add_option("--seed", seed, "random seed for the sampled states");
  verify->add_option("--output-dir", verify_dir,
                     "override the output directory");

  std::string csv_path, svg_path, style = "lines";
  auto* plot = app.add_subcommand("plot", "render a curve CSV as SVG");
  plot->add_option("csv", csv_path, "input CSV file")->required();
  plot->add_option("--output", svg_path,
                   "output SVG path (default: input with .svg)");
  plot->add_option("--style", style, "lines or points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_config(config_path, output_dir);
    if (verify->parsed()) return run_verify(seed, verify_dir);
    if (plot->parsed()) {
      if (svg_path.empty()) {
        const auto dot = csv_path.find_last_of('.');
        svg_path = (dot == std::string::npos ? csv_path
                                             : csv_path.substr(0, dot)) +
                   ".svg";
      }
      ex::plot_csv(csv_path, svg_path, style);
      std::printf("wrote %s\n", svg_path.c_str());
      return 0;
    }
  } catch (const gaussym::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 2;
  }
  return 2;
}
