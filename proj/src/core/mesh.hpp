#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "core/problem.hpp"
#include "core/spline.hpp"

namespace utm {

/// Raised when a time transform is requested beyond the stored trace horizon.
struct TraceHorizonError : std::exception {
  const char* what() const noexcept override {
    return "requested time exceeds the stored trace horizon";
  }
};

/// Interface and outer-edge time series recorded by the reference solver,
/// one row per mesh time step.
struct TraceTable {
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<std::complex<double>> psi1_at_0, psi2_at_0;
  std::vector<std::complex<double>> psi1_at_minusL, psi2_at_minusL;
  std::vector<std::complex<double>> psi1_at_L, psi2_at_L;

  /// Cubic interpolants of each series, built once after the solve.
  std::shared_ptr<const UniformCubicSpline> spline_psi1_at_0, spline_psi2_at_0;
  std::shared_ptr<const UniformCubicSpline> spline_psi1_at_minusL, spline_psi2_at_minusL;
  std::shared_ptr<const UniformCubicSpline> spline_psi1_at_L, spline_psi2_at_L;
};

/// Which recorded trace a time transform reads.
enum class TraceSlot {
  Component1AtInterface,
  Component2AtInterface,
  Component1AtLeftEdge,
  Component2AtLeftEdge,
  Component1AtRightEdge,
  Component2AtRightEdge,
};

const UniformCubicSpline& trace_spline(const TraceTable& traces, TraceSlot slot);

/// \int_0^t e^{Omega s} trace(s) ds over the cubic interpolant of the
/// tabulated trace (exact piecewise integration; the only error is the
/// interpolant's). Throws TraceHorizonError when t exceeds the table.
std::complex<double> trace_time_transform(const TraceTable& traces, TraceSlot slot,
                                          std::complex<double> omega, double t);

/// Conservation diagnostics: discrete mass integral and boundary fluxes per
/// time level.
struct ConservationSeries {
  double dt = 0.0;
  std::vector<double> mass_integral; // trapezoid rule over the grid
  std::vector<double> flux_left;     // |psi1|^2 - |psi2|^2 at the left edge
  std::vector<double> flux_right;

  /// sup_n | dI/dt + [j] | with centered differencing over interior levels.
  double worst_residual() const;
};

/// Result of a reference solve: recorded traces, conservation series, and
/// full solution rows at the requested sample times.
class ReferenceSolution {
 public:
  const TraceTable& traces() const { return traces_; }
  const ConservationSeries& conservation() const { return conservation_; }
  const std::vector<double>& grid() const { return x_; }
  double dx() const { return dx_; }
  double left_edge() const { return x_.front(); }
  double right_edge() const { return x_.back(); }

  /// Solution at (x, t) for one component/region, cubic in x over the
  /// region's nodes and linear in t between the two bracketing stored rows
  /// (exact when t is one of the requested sample times on the grid).
  std::complex<double> sample(int component, int region, double x, double t) const;

 private:
  friend ReferenceSolution solve_reference(const InterfaceProblem&, double,
                                           const std::vector<double>&, bool, std::ostream*);

  struct Row {
    double t = 0.0;
    std::vector<std::complex<double>> psi1, psi2;
  };

  const Row* row_at_or_below(double t) const;
  const Row* row_at_or_above(double t) const;
  std::complex<double> sample_row(const Row& row, int component, int region, double x) const;

  std::vector<double> x_;
  double dx_ = 0.0;
  std::size_t interface_index_ = 0;
  std::map<double, Row> rows_; // keyed by row time
  TraceTable traces_;
  ConservationSeries conservation_;
};

/// Advances the characteristic-mesh scheme (dt = dx) to the problem horizon.
///
/// `sample_times` lists the times at which full solution rows are kept for
/// later sampling; traces and conservation series are always recorded at
/// every step. When `mesh_dump` is non-null every node of every *kept* time
/// level is streamed as CSV (x, t, region, re/im of both components);
/// dumping all levels would be gigabytes at production resolutions.
/// Rejects dx that fails to tile the domain and non-positive horizons.
ReferenceSolution solve_reference(const InterfaceProblem& problem, double dx,
                                  const std::vector<double>& sample_times = {},
                                  bool conserve = false, std::ostream* mesh_dump = nullptr);

} // namespace utm
