#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/problem.hpp"
#include "core/quadrature.hpp"

namespace utm {

/// Configuration-file problem: carries the offending field path in the
/// message (exit code 1 territory for the CLI).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Query grid of a scenario: a closed x-range with a fixed point count per
/// region, evaluated at each listed time.
struct QueryGrid {
  double region1_min = 0.0;
  double region1_max = 0.0;
  double region2_min = 0.0;
  double region2_max = 0.0;
  int x_count = 41; ///< points per region (endpoints included)
  std::vector<double> times;

  std::vector<double> region_points(int region) const;
};

/// Parsed and validated scenario file. `quadrature` keeps the auto-derivation
/// sentinels (k_max = 0, panels = 0) unless the file overrides them.
struct ScenarioConfig {
  InterfaceProblem problem;
  QuadratureSpec quadrature{.k_max = 0.0};
  /// Evaluate the corrected term tables instead of the transcribed originals
  /// (the CLI's --erratum-fixes flag also forces this on).
  bool erratum_fixes = false;
  double reference_dx = 0.0009765625; // 2^-10
  QueryGrid queries;
  std::string output_directory = ".";
};

/// Strict parse: unknown keys anywhere are rejected, every physical quantity
/// is validated, and all diagnostics name the offending field path.
ScenarioConfig parse_scenario(const std::string& json_text);

ScenarioConfig load_scenario(const std::string& path);

/// JSON serialization; parse_scenario(serialize_scenario(c)) reproduces all
/// semantic fields.
std::string serialize_scenario(const ScenarioConfig& config);

} // namespace utm
