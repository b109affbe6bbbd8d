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

#ifndef GAUSSYM_EXPERIMENT_HPP
#define GAUSSYM_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gaussym::experiment {

enum class Kind {
  mpemba_ferro,      // exact vs ballistic asymmetry curves, crossing search
  neel_restoration,  // staggered-state plateaus over the tilt angle
  random_ensemble,   // Monte Carlo typical asymmetry vs window size
  fcs_variance,      // charge-variance curves and cumulant reports
  verify_suite,      // self-checking property and oracle suites
};

Kind kind_from_string(const std::string& name);
std::string to_string(Kind k);

struct Config {
  Kind kind = Kind::verify_suite;
  nlohmann::json parameters;  // kind-specific, defaults filled on parse
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  bool has_seed = false;

  static Config from_json(const nlohmann::json& j);
  static Config from_file(const std::string& path);
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0;
  double threshold = 0;
  std::string detail;
};

struct RunReport {
  std::vector<Check> checks;
  std::vector<std::string> outputs;  // paths written, relative to output_dir

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

// Directory used when neither the config nor the command line names one:
// $GAUSSYM_OUTPUT_DIR if set, else the current directory.
std::string default_output_dir();

RunReport run(const Config& config);

// Machine-readable failure list; written next to the other outputs when a
// run reports failures.
nlohmann::json report_to_json(const RunReport& report);

// Renders a curve CSV produced by any kind into an SVG.
void plot_csv(const std::string& csv_path, const std::string& svg_path,
              const std::string& style);

}  // namespace gaussym::experiment

#endif  // GAUSSYM_EXPERIMENT_HPP
