#include "core/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "core/quadrature.hpp"

namespace utm {
namespace {

bool divides(double whole, double part) {
  const double q = whole / part;
  return std::abs(q - std::round(q)) < 1e-9;
}

std::shared_ptr<const UniformCubicSpline> build_trace_spline(
    double dt, const std::vector<std::complex<double>>& values) {
  return std::make_shared<const UniformCubicSpline>(0.0, dt, values);
}

} // namespace

const UniformCubicSpline& trace_spline(const TraceTable& traces, TraceSlot slot) {
  switch (slot) {
    case TraceSlot::Component1AtInterface:
      return *traces.spline_psi1_at_0;
    case TraceSlot::Component2AtInterface:
      return *traces.spline_psi2_at_0;
    case TraceSlot::Component1AtLeftEdge:
      return *traces.spline_psi1_at_minusL;
    case TraceSlot::Component2AtLeftEdge:
      return *traces.spline_psi2_at_minusL;
    case TraceSlot::Component1AtRightEdge:
      return *traces.spline_psi1_at_L;
    default:
      return *traces.spline_psi2_at_L;
  }
}

std::complex<double> trace_time_transform(const TraceTable& traces, TraceSlot slot,
                                          std::complex<double> omega, double t) {
  if (t > traces.horizon * (1.0 + 1e-12) + 1e-15) {
    throw TraceHorizonError{};
  }
  return integrate_spline_exp(trace_spline(traces, slot), omega, std::min(t, traces.horizon));
}

double ConservationSeries::worst_residual() const {
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < mass_integral.size(); ++n) {
    const double didt = (mass_integral[n + 1] - mass_integral[n - 1]) / (2.0 * dt);
    const double jump = flux_right[n] - flux_left[n];
    worst = std::max(worst, std::abs(didt + jump));
  }
  return worst;
}

const ReferenceSolution::Row* ReferenceSolution::row_at_or_below(double t) const {
  auto it = rows_.upper_bound(t + 1e-12);
  if (it == rows_.begin()) {
    return nullptr;
  }
  return &std::prev(it)->second;
}

const ReferenceSolution::Row* ReferenceSolution::row_at_or_above(double t) const {
  auto it = rows_.lower_bound(t - 1e-12);
  if (it == rows_.end()) {
    return nullptr;
  }
  return &it->second;
}

std::complex<double> ReferenceSolution::sample_row(const Row& row, int component, int region,
                                                   double x) const {
  const std::vector<std::complex<double>>& field = (component == 1) ? row.psi1 : row.psi2;
  // Per-region cubic interpolation, interface node included in both regions.
  std::size_t lo = (region == 1) ? 0 : interface_index_;
  std::size_t hi = (region == 1) ? interface_index_ : field.size() - 1;
  const UniformCubicSpline spline(
      x_[lo], dx_, std::vector<std::complex<double>>(field.begin() + static_cast<long>(lo),
                                                     field.begin() + static_cast<long>(hi) + 1));
  return spline(x);
}

std::complex<double> ReferenceSolution::sample(int component, int region, double x,
                                               double t) const {
  const Row* below = row_at_or_below(t);
  const Row* above = row_at_or_above(t);
  if (below == nullptr || above == nullptr) {
    throw std::out_of_range("no stored solution row brackets the requested time");
  }
  if (below == above || above->t - below->t < 1e-14) {
    return sample_row(*below, component, region, x);
  }
  const double w = (t - below->t) / (above->t - below->t);
  return (1.0 - w) * sample_row(*below, component, region, x) +
         w * sample_row(*above, component, region, x);
}

ReferenceSolution solve_reference(const InterfaceProblem& problem, double dx,
                                  const std::vector<double>& sample_times, bool conserve,
                                  std::ostream* mesh_dump) {
  const Geometry& g = problem.geometry;
  if (dx <= 0.0) {
    throw std::invalid_argument("mesh spacing must be positive");
  }
  if (g.T <= 0.0) {
    throw std::invalid_argument("time horizon must be positive");
  }
  if (!divides(g.T, dx)) {
    throw std::invalid_argument("mesh spacing must tile the time horizon");
  }

  double XL, XR;
  if (g.finite()) {
    if (!divides(g.L, dx)) {
      throw std::invalid_argument("mesh spacing must tile the interval length");
    }
    XL = -g.L;
    XR = g.L;
  } else {
    // Causality makes the truncated half-line solve exact: nothing from
    // beyond |x| = T + support can reach recorded nodes.
    const double X = std::ceil(g.T + problem.support_radius() + 2.0);
    XL = -X;
    XR = X;
  }

  const std::size_t N = static_cast<std::size_t>(std::llround((XR - XL) / dx));
  const std::size_t steps = static_cast<std::size_t>(std::llround(g.T / dx));
  const double dt = dx;

  ReferenceSolution out;
  out.dx_ = dx;
  out.x_.resize(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    out.x_[i] = XL + dx * static_cast<double>(i);
  }
  out.interface_index_ = static_cast<std::size_t>(std::llround(-XL / dx));
  assert(std::abs(out.x_[out.interface_index_]) < 1e-9);
  const std::size_t i0 = out.interface_index_;

  // Each component is initialized from its own upwind side at the interface
  // node (component 1 transports rightward, so region 1, and vice versa).
  std::vector<std::complex<double>> psi1(N + 1), psi2(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double x = out.x_[i];
    const int r = (x < 0.0) ? 1 : 2;
    psi1[i] = problem.initial_profile(1, r)(x);
    psi2[i] = problem.initial_profile(2, r)(x);
  }
  psi1[i0] = problem.initial_profile(1, 1)(0.0);
  psi2[i0] = problem.initial_profile(2, 2)(0.0);

  // mu1[i] covers the right-moving segment ending at node i, mu2[i] the
  // left-moving segment starting there; the interface node splits them.
  std::vector<std::complex<double>> mu1(N + 1), mu2(N + 1), inv_den(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double x = out.x_[i];
    mu1[i] = std::complex<double>(0.0, 0.5 * dt * (x <= 0.0 ? problem.mass1 : problem.mass2));
    mu2[i] = std::complex<double>(0.0, 0.5 * dt * (x < 0.0 ? problem.mass1 : problem.mass2));
    inv_den[i] = 1.0 / (1.0 - mu1[i] * mu2[i]);
  }

  TraceTable& traces = out.traces_;
  traces.dt = dt;
  traces.horizon = g.T;
  traces.times.resize(steps + 1);
  traces.psi1_at_0.resize(steps + 1);
  traces.psi2_at_0.resize(steps + 1);
  traces.psi1_at_minusL.resize(steps + 1);
  traces.psi2_at_minusL.resize(steps + 1);
  traces.psi1_at_L.resize(steps + 1);
  traces.psi2_at_L.resize(steps + 1);

  ConservationSeries& cons = out.conservation_;
  if (conserve) {
    cons.dt = dt;
    cons.mass_integral.resize(steps + 1);
    cons.flux_left.resize(steps + 1);
    cons.flux_right.resize(steps + 1);
  }

  // Times at which full rows must be retained: each requested time needs its
  // two bracketing mesh levels.
  std::vector<std::size_t> keep_levels;
  for (double t : sample_times) {
    if (t < -1e-12 || t > g.T * (1.0 + 1e-12)) {
      throw std::out_of_range("sample time outside [0, T]");
    }
    const double level = t / dt;
    keep_levels.push_back(static_cast<std::size_t>(std::floor(level + 1e-9)));
    keep_levels.push_back(
        std::min(steps, static_cast<std::size_t>(std::ceil(level - 1e-9))));
  }
  std::sort(keep_levels.begin(), keep_levels.end());
  keep_levels.erase(std::unique(keep_levels.begin(), keep_levels.end()), keep_levels.end());

  const auto record = [&](std::size_t n) {
    const double t = dt * static_cast<double>(n);
    traces.times[n] = t;
    traces.psi1_at_0[n] = psi1[i0];
    traces.psi2_at_0[n] = psi2[i0];
    traces.psi1_at_minusL[n] = psi1.front();
    traces.psi2_at_minusL[n] = psi2.front();
    traces.psi1_at_L[n] = psi1.back();
    traces.psi2_at_L[n] = psi2.back();
    if (conserve) {
      double mass = 0.0;
      for (std::size_t i = 0; i <= N; ++i) {
        const double rho = std::norm(psi1[i]) + std::norm(psi2[i]);
        mass += (i == 0 || i == N) ? 0.5 * rho : rho;
      }
      cons.mass_integral[n] = mass * dx;
      cons.flux_left[n] = std::norm(psi1.front()) - std::norm(psi2.front());
      cons.flux_right[n] = std::norm(psi1.back()) - std::norm(psi2.back());
    }
    const bool kept = std::binary_search(keep_levels.begin(), keep_levels.end(), n);
    if (kept) {
      ReferenceSolution::Row row;
      row.t = t;
      row.psi1 = psi1;
      row.psi2 = psi2;
      out.rows_.emplace(t, std::move(row));
    }
    // The field dump covers the retained levels (every node at each queried
    // time); dumping every step would be gigabytes at production dx.
    if (mesh_dump != nullptr && kept) {
      (*mesh_dump) << std::setprecision(17);
      for (std::size_t i = 0; i <= N; ++i) {
        const int region = (out.x_[i] < 0.0) ? 1 : 2;
        (*mesh_dump) << out.x_[i] << ',' << t << ',' << region << ',' << psi1[i].real() << ','
                     << psi1[i].imag() << ',' << psi2[i].real() << ',' << psi2[i].imag() << '\n';
      }
    }
  };

  record(0);

  std::vector<std::complex<double>> a(N + 1), b(N + 1), next1(N + 1), next2(N + 1);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_new = dt * static_cast<double>(n);
    a[0] = 0.0;
    b[N] = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      a[i] = psi1[i - 1] - mu1[i] * psi2[i - 1];
    }
    for (std::size_t i = 0; i < N; ++i) {
      b[i] = psi2[i + 1] - mu2[i] * psi1[i + 1];
    }
    for (std::size_t i = 0; i <= N; ++i) {
      next1[i] = (a[i] - mu1[i] * b[i]) * inv_den[i];
      next2[i] = (b[i] - mu2[i] * a[i]) * inv_den[i];
    }
    if (g.finite()) {
      next1[0] = problem.boundary_profile(1, 1)(t_new);
      next2[N] = problem.boundary_profile(2, 2)(t_new);
    } else {
      next1[0] = 0.0;
      next2[N] = 0.0;
    }
    // Outflow rows close the trapezoid update against the freshly set inflow.
    next2[0] = b[0] - mu2[0] * next1[0];
    next1[N] = a[N] - mu1[N] * next2[N];
    psi1.swap(next1);
    psi2.swap(next2);
    record(n);
  }

  traces.spline_psi1_at_0 = build_trace_spline(dt, traces.psi1_at_0);
  traces.spline_psi2_at_0 = build_trace_spline(dt, traces.psi2_at_0);
  traces.spline_psi1_at_minusL = build_trace_spline(dt, traces.psi1_at_minusL);
  traces.spline_psi2_at_minusL = build_trace_spline(dt, traces.psi2_at_minusL);
  traces.spline_psi1_at_L = build_trace_spline(dt, traces.psi1_at_L);
  traces.spline_psi2_at_L = build_trace_spline(dt, traces.psi2_at_L);
  return out;
}

} // namespace utm
