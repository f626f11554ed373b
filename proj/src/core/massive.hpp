#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/mesh.hpp"
#include "core/problem.hpp"
#include "core/quadrature.hpp"
#include "core/terms.hpp"
#include "core/transforms.hpp"

namespace utm {

/// Raised when no admissible spectral grid can meet the requested tail
/// tolerance within the truncation-radius/panel budget.
struct QuadratureBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MassiveOptions {
  TermVariant variant = TermVariant::Corrected;
  /// Subtract the slowly-decaying trace/boundary endpoint tails from the
  /// integrand and add their closed-form inversions back after quadrature.
  /// Automatically disabled for term lists that fail the pairing or
  /// tail-extraction preconditions.
  bool subtract_trace_tails = true;
  /// k_max == 0 derives the truncation radius from the data-transform decay
  /// envelope; panels == 0 derives the panel count from the phase-resolution
  /// rule. Non-zero values are validated against both rules.
  QuadratureSpec quadrature{.k_max = 0.0};
  int threads = 1;
};

/// Evaluates the integral representations of the massive interface problem
/// on the spectral grid, with interface traces supplied by a TraceTable and
/// outer-boundary data read from the problem's prescribed profiles.
class MassiveEvaluator {
 public:
  MassiveEvaluator(const InterfaceProblem& problem, std::shared_ptr<const TraceTable> traces,
                   MassiveOptions options = {});

  std::complex<double> evaluate(int component, const QueryPoint& q) const;

  /// Batch evaluation of one component over an x-grid at fixed time and
  /// region; the k-grid work (per-node time transforms in particular) is
  /// shared across the whole batch.
  std::vector<std::complex<double>> evaluate_grid(int component, int region,
                                                  const std::vector<double>& xs, double t) const;

  /// The grid parameters a batch with the given |x| bound and time resolves
  /// to, after applying the auto-derivation rules (exposed for reports and
  /// tests).
  QuadratureSpec resolve_quadrature(double max_abs_x, double t) const;

  const MassiveOptions& options() const { return options_; }
  const InterfaceProblem& problem() const { return *problem_; }

  /// Whether the tail subtraction is actually in effect for one region's
  /// component list (false when the list failed a precondition).
  bool subtraction_active(int region, int component) const;

 private:
  struct TransformKey {
    TermAtom::Kind kind{};
    int component = 0;
    int edge_region = 0;
    int branch_sign = 0;
    bool operator<(const TransformKey& o) const;
  };

  void node_transforms(const TransformKey& key, const std::vector<double>& alphas, double t,
                       std::vector<std::complex<double>>& out) const;
  std::complex<double> source_value(TermAtom::Kind kind, int component, int edge_region,
                                    double t, bool derivative) const;

  std::shared_ptr<const InterfaceProblem> problem_;
  std::shared_ptr<const TraceTable> traces_;
  MassiveOptions options_;
  double resolved_k_max_ = 0.0;
  double effective_interval_ = 0.0; // L (finite) or initial-data support radius
  // [region-1][component-1]
  SubtractionPlan plans_[2][2];
  std::vector<std::unique_ptr<SpatialTransformCache>> data_caches_; // [comp-1]*2 + (reg-1)
};

/// Experimental trace closure by Picard iteration: starting from zero
/// traces, repeatedly evaluate the representation at the interface (and, in
/// the finite case, at the outer edges) to refill the table. Exposed for
/// experimentation only; the characteristic-mesh solver remains the trace
/// source of record.
TraceTable fixed_point_traces(const InterfaceProblem& problem, const MassiveOptions& options,
                              double dt, int iterations);

} // namespace utm
