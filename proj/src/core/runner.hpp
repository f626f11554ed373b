#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/scenario.hpp"
#include "core/terms.hpp"

namespace utm {

struct RunOptions {
  /// Forces a term-table variant regardless of the config's `erratum_fixes`
  /// field (the CLI's --erratum-fixes maps to Corrected here).
  std::optional<TermVariant> variant_override;
  bool dump_traces = false;
  int threads = 1;
};

/// Numerical summary of a completed run; every value also lands in the
/// written artifacts.
struct RunSummary {
  TermVariant variant = TermVariant::Transcribed;
  bool massless = false;
  double linf = 0.0;                   ///< UTM vs reference over the query grid
  double l2 = 0.0;                     ///< root-mean-square over the query grid
  double continuity = 0.0;             ///< worst interface jump on a 20-point t-grid
  double recovery = 0.0;               ///< worst |eval(t=1e-6) - initial| at interior points
  double conservation_residual = 0.0;  ///< reference-mesh conservation defect
  std::vector<std::string> files;      ///< artifacts written, in order
};

/// Full scenario run: reference mesh + UTM evaluation + solution.csv,
/// errors.csv, report.txt (and mesh.csv/traces.csv when dumping) under the
/// config's output directory.
RunSummary run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// One refinement level of the convergence study.
struct ConvergenceLevel {
  int level = 0;
  double dx = 0.0;
  double utm_vs_reference_linf = 0.0;
  double reference_self_diff = 0.0; ///< L-inf between this level's mesh and the next finer one
  double reference_order = 0.0;     ///< log2 ratio of successive self-diffs (nan until defined)
  double conservation_residual = 0.0;
  double conservation_order = 0.0; ///< log2 ratio of successive residuals (nan on level 0)
  int panels = 0;                  ///< spectral panels used for the panel-doubling study (0 = n/a)
  double panel_self_diff = 0.0;    ///< L-inf between this panel count and the doubled one
};

/// Convergence study: reference solver at dx, dx/2, ... plus (massive case)
/// the spectral quadrature at doubling panel counts against the finest
/// trace table. Writes convergence.csv; returns the rows.
std::vector<ConvergenceLevel> run_convergence(const ScenarioConfig& config, int levels,
                                              const RunOptions& options = {});

} // namespace utm
