#ifndef DIRAC_UTM_H
#define DIRAC_UTM_H

/// Public C ABI of the Dirac interface-problem solver.
///
/// Usage pattern: build a scenario from a JSON configuration (file or
/// string), then either run it end-to-end (artifacts on disk) or create a
/// solver handle for point evaluation. Every fallible call returns a status
/// code; the thread-local message behind dirac_utm_last_error() describes
/// the most recent failure in detail.

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dirac_utm_status {
  DIRAC_UTM_OK = 0,
  /// Configuration problem: unparseable/invalid JSON, unknown keys, values
  /// that violate a documented invariant. CLI exit code 1.
  DIRAC_UTM_ERR_CONFIG = 1,
  /// Numerical failure during a solve: quadrature budget exhausted, trace
  /// horizon exceeded, non-integrable profile. CLI exit code 2.
  DIRAC_UTM_ERR_SOLVER = 2,
  /// Invalid call: null handle/pointer, out-of-range component, region, or
  /// query point.
  DIRAC_UTM_ERR_INVALID_ARG = 3,
} dirac_utm_status;

/// Opaque parsed-and-validated scenario configuration.
typedef struct dirac_utm_scenario dirac_utm_scenario;

/// Opaque solver: reference mesh plus the matching evaluator, ready for
/// point queries.
typedef struct dirac_utm_solver dirac_utm_solver;

typedef struct dirac_utm_options {
  /// Term-table selection: 0 honors the config's `erratum_fixes` field,
  /// 1 forces the corrected tables (the CLI's --erratum-fixes), -1 forces
  /// the transcribed originals.
  int erratum_fixes;
  /// Nonzero: also write mesh.csv and traces.csv during a run.
  int dump_traces;
  /// Worker threads for the spectral evaluation; >= 1. Results are
  /// bit-identical for every thread count.
  int threads;
} dirac_utm_options;

/// Scalar summary of a completed run; the same numbers appear in the
/// written report.txt.
typedef struct dirac_utm_run_summary {
  double linf;                  ///< max |UTM - reference| over the query grid
  double l2;                    ///< root-mean-square of the same errors
  double continuity;            ///< worst interface jump on a 20-point t-grid
  double recovery;              ///< worst |eval(t=1e-6) - initial data| at interior points
  double conservation_residual; ///< reference-mesh conservation defect
  int used_corrected_terms;     ///< 1 if the corrected term tables were evaluated
  int massless;                 ///< 1 if the closed-form transport path ran
} dirac_utm_run_summary;

/// Sensible defaults: honor the config's variant, no dumps, single thread.
void dirac_utm_options_init(dirac_utm_options* options);

/// Parse + validate a scenario from a JSON file. On success *out owns the
/// scenario (release with dirac_utm_scenario_free).
dirac_utm_status dirac_utm_scenario_from_file(const char* path, dirac_utm_scenario** out);

/// Parse + validate a scenario from a JSON string.
dirac_utm_status dirac_utm_scenario_from_json(const char* json_text, dirac_utm_scenario** out);

/// Serialize the scenario back to JSON (round-trips all semantic fields).
/// *out_text is heap-allocated; release with dirac_utm_string_free.
dirac_utm_status dirac_utm_scenario_to_json(const dirac_utm_scenario* scenario, char** out_text);

void dirac_utm_scenario_free(dirac_utm_scenario* scenario);

/// End-to-end run: reference mesh, UTM evaluation, and solution.csv /
/// errors.csv / report.txt under the config's output directory.
/// `options` and `out_summary` may be NULL.
dirac_utm_status dirac_utm_run(const dirac_utm_scenario* scenario,
                               const dirac_utm_options* options,
                               dirac_utm_run_summary* out_summary);

/// Convergence study (levels >= 3): reference solver at dx, dx/2, ... and
/// the spectral quadrature at doubling panel counts; writes convergence.csv
/// under the config's output directory.
dirac_utm_status dirac_utm_convergence(const dirac_utm_scenario* scenario,
                                       const dirac_utm_options* options, int levels);

/// Build a solver for point evaluation: runs the reference mesh once, then
/// keeps the appropriate evaluator (closed-form transport when both masses
/// are zero, spectral representation otherwise).
dirac_utm_status dirac_utm_solver_create(const dirac_utm_scenario* scenario,
                                         const dirac_utm_options* options,
                                         dirac_utm_solver** out);

/// Evaluate the UTM solution of one component (1 or 2) in one region (1 or
/// 2) at `count` positions and one time. out_re/out_im receive `count`
/// values each.
dirac_utm_status dirac_utm_solver_eval(const dirac_utm_solver* solver, int component, int region,
                                       const double* xs, size_t count, double t, double* out_re,
                                       double* out_im);

/// Sample the characteristic-mesh reference solution on the same interface.
dirac_utm_status dirac_utm_solver_eval_reference(const dirac_utm_solver* solver, int component,
                                                 int region, const double* xs, size_t count,
                                                 double t, double* out_re, double* out_im);

void dirac_utm_solver_free(dirac_utm_solver* solver);

/// Message of the most recent failure on this thread; never NULL. Valid
/// until the next failing call on the same thread.
const char* dirac_utm_last_error(void);

/// Release a string returned by this library.
void dirac_utm_string_free(char* text);

/// Semantic version of the library.
const char* dirac_utm_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIRAC_UTM_H */
