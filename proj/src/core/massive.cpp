#include "core/massive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <thread>
#include <tuple>
#include <utility>

namespace utm {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

Region region_side(int region) { return region == 1 ? Region::Left : Region::Right; }

/// Upper bound on the summed decay envelopes of the four initial-data
/// transforms; drives the truncation-radius rule.
double data_envelope(const InterfaceProblem& problem, double k) {
  double s = 0.0;
  for (int c = 1; c <= 2; ++c) {
    for (int r = 1; r <= 2; ++r) {
      s += transform_envelope(problem.initial_profile(c, r), k);
    }
  }
  return s;
}

/// Closed-form full-line inversions of the subtracted endpoint tails.
/// Without a low-k regularizer the tail weights are (odd*k + even)/alpha^2
/// and invert through
///   int e^{iky} k/(k^2+m^2) dk = i*pi*sgn(y)*e^{-m|y|},
///   int e^{iky} 1/(k^2+m^2) dk = (pi/m)*e^{-m|y|}.
/// With the regularizer sigma(k) = k^2/(k^2+k0^2) (used for m < 1, where the
/// unregularized tail blows up near k = 0) each integral splits by partial
/// fractions into an m-decay and a k0-decay part.
struct CfKernels {
  std::complex<double> odd;
  std::complex<double> even;
};

CfKernels cf_kernels(double y, double sign_at_zero, double m, const std::optional<double>& k0) {
  double sg = (y > 0.0) ? 1.0 : (y < 0.0 ? -1.0 : sign_at_zero);
  const double ay = std::abs(y);
  if (!k0) {
    const double decay = std::exp(-m * ay);
    return {kI * (kPi * sg * decay), (kPi / m) * decay};
  }
  const double q = *k0;
  const double a = -m * m / (q * q - m * m);
  const double b = q * q / (q * q - m * m);
  const double em = std::exp(-m * ay);
  const double eq = std::exp(-q * ay);
  return {kI * (kPi * sg * (a * em + b * eq)), kPi * (a / m * em + b / q * eq)};
}

} // namespace

bool MassiveEvaluator::TransformKey::operator<(const TransformKey& o) const {
  return std::tie(kind, component, edge_region, branch_sign) <
         std::tie(o.kind, o.component, o.edge_region, o.branch_sign);
}

MassiveEvaluator::MassiveEvaluator(const InterfaceProblem& problem,
                                   std::shared_ptr<const TraceTable> traces,
                                   MassiveOptions options)
    : problem_(std::make_shared<InterfaceProblem>(problem)),
      traces_(std::move(traces)),
      options_(options) {
  if (!(problem_->mass1 > 0.0) || !(problem_->mass2 > 0.0)) {
    throw std::invalid_argument("massive evaluator requires strictly positive masses; "
                                "use the transport evaluator for the massless problem");
  }
  if (!traces_) {
    throw std::invalid_argument("massive evaluator requires an interface trace table");
  }
  if (traces_->times.size() < 2 || !traces_->spline_psi1_at_0 || !traces_->spline_psi2_at_0) {
    throw std::invalid_argument("trace table is empty or missing its interpolants");
  }
  const QuadratureSpec& q = options_.quadrature;
  if (q.k_max < 0.0 || q.panels < 0 || q.nodes_per_panel < 2 || !(q.tail_tolerance > 0.0)) {
    throw std::invalid_argument("invalid quadrature specification");
  }
  if (options_.threads < 1) {
    throw std::invalid_argument("thread count must be >= 1");
  }

  effective_interval_ =
      problem_->geometry.finite() ? problem_->geometry.L : problem_->support_radius();

  // Truncation radius: the smallest K with envelope(K) * K <= tail_tolerance,
  // doubling from 8; an explicit k_max must satisfy the same bound.
  if (q.k_max > 0.0) {
    if (data_envelope(*problem_, q.k_max) * q.k_max > q.tail_tolerance) {
      throw QuadratureBudgetError(
          "explicit k_max fails the tail-tolerance rule for the initial data; "
          "raise k_max or loosen tail_tolerance");
    }
    resolved_k_max_ = q.k_max;
  } else {
    double radius = 8.0;
    while (data_envelope(*problem_, radius) * radius > q.tail_tolerance) {
      radius *= 2.0;
      if (radius > 1.1e6) {
        throw QuadratureBudgetError(
            "truncation-radius search exceeded k_max = 1e6 without meeting tail_tolerance");
      }
    }
    resolved_k_max_ = radius;
  }

  for (int r = 1; r <= 2; ++r) {
    for (int c = 1; c <= 2; ++c) {
      const TermList& list = term_list(options_.variant, problem_->geometry.finite(), r, c);
      plans_[r - 1][c - 1] =
          options_.subtract_trace_tails ? build_subtraction_plan(list, problem_->mass(r))
                                        : SubtractionPlan{};
    }
  }

  data_caches_.reserve(4);
  for (int c = 1; c <= 2; ++c) {
    for (int r = 1; r <= 2; ++r) {
      data_caches_.push_back(std::make_unique<SpatialTransformCache>(
          problem_->initial_profile(c, r), region_side(r), problem_->geometry));
    }
  }
}

bool MassiveEvaluator::subtraction_active(int region, int component) const {
  if (region < 1 || region > 2 || component < 1 || component > 2) {
    throw std::invalid_argument("region and component must be 1 or 2");
  }
  return plans_[region - 1][component - 1].active;
}

QuadratureSpec MassiveEvaluator::resolve_quadrature(double max_abs_x, double t) const {
  QuadratureSpec spec = options_.quadrature;
  spec.k_max = resolved_k_max_;
  // Panel-width rule: each panel must stay below one period of the fastest
  // phase e^{ik(x + t + L_eff)} appearing in the integrand, capped at 1.
  const double phase_scale = max_abs_x + t + effective_interval_;
  const double width_bound = phase_scale > 0.0 ? std::min(kPi / phase_scale, 1.0) : 1.0;
  const int min_panels =
      std::max(1, static_cast<int>(std::ceil(spec.k_max / width_bound - 1e-12)));
  if (spec.panels == 0) {
    spec.panels = min_panels;
  } else if (spec.panels < min_panels) {
    throw std::invalid_argument("panel count under-resolves the largest phase; need >= " +
                                std::to_string(min_panels) + " panels for k_max " +
                                std::to_string(spec.k_max));
  }
  if (static_cast<long long>(spec.panels) * spec.nodes_per_panel > 4000000LL) {
    throw QuadratureBudgetError("spectral grid exceeds the 4e6 node budget");
  }
  return spec;
}

void MassiveEvaluator::node_transforms(const TransformKey& key, const std::vector<double>& alphas,
                                       double t, std::vector<std::complex<double>>& out) const {
  const std::size_t n = alphas.size();
  const double sign = static_cast<double>(key.branch_sign);
  auto fill = [&](std::size_t lo, std::size_t hi) {
    if (key.kind == TermAtom::Kind::InterfaceTrace) {
      const TraceSlot slot = key.component == 1 ? TraceSlot::Component1AtInterface
                                                : TraceSlot::Component2AtInterface;
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = trace_time_transform(*traces_, slot, kI * (sign * alphas[i]), t);
      }
      return;
    }
    // Outer-edge data: inflow components carry the prescribed boundary
    // profiles; outflow components are part of the solution and read the
    // recorded traces, exactly like the interface slots.
    const bool inflow = (key.component == 1 && key.edge_region == 1) ||
                        (key.component == 2 && key.edge_region == 2);
    if (inflow) {
      const Profile& profile = problem_->boundary_profile(key.component, key.edge_region);
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = time_transform(profile, kI * (sign * alphas[i]), t);
      }
    } else {
      const TraceSlot slot = key.edge_region == 1 ? TraceSlot::Component2AtLeftEdge
                                                  : TraceSlot::Component1AtRightEdge;
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] = trace_time_transform(*traces_, slot, kI * (sign * alphas[i]), t);
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(options_.threads), n / 128 + 1);
  if (threads <= 1) {
    fill(0, n);
    return;
  }
  // Disjoint chunk writes into a preallocated array: bit-identical results
  // for every thread count.
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t th = 0; th < threads; ++th) {
    const std::size_t lo = th * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) {
      break;
    }
    pool.emplace_back(fill, lo, hi);
  }
  for (auto& th : pool) {
    th.join();
  }
}

std::complex<double> MassiveEvaluator::source_value(TermAtom::Kind kind, int component,
                                                    int edge_region, double t,
                                                    bool derivative) const {
  if (kind == TermAtom::Kind::InterfaceTrace) {
    const auto& s = trace_spline(*traces_, component == 1 ? TraceSlot::Component1AtInterface
                                                          : TraceSlot::Component2AtInterface);
    return derivative ? s.derivative(t) : s(t);
  }
  const bool inflow = (component == 1 && edge_region == 1) || (component == 2 && edge_region == 2);
  if (inflow) {
    const Profile& p = problem_->boundary_profile(component, edge_region);
    return derivative ? p.derivative(t) : p(t);
  }
  const auto& s = trace_spline(*traces_, edge_region == 1 ? TraceSlot::Component2AtLeftEdge
                                                          : TraceSlot::Component1AtRightEdge);
  return derivative ? s.derivative(t) : s(t);
}

std::complex<double> MassiveEvaluator::evaluate(int component, const QueryPoint& q) const {
  return evaluate_grid(component, q.region, std::vector<double>{q.x}, q.t).front();
}

std::vector<std::complex<double>> MassiveEvaluator::evaluate_grid(int component, int region,
                                                                  const std::vector<double>& xs,
                                                                  double t) const {
  if (component < 1 || component > 2) {
    throw std::invalid_argument("component must be 1 or 2");
  }
  if (region < 1 || region > 2) {
    throw std::invalid_argument("region must be 1 or 2");
  }
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be non-negative");
  }
  if (t > problem_->geometry.T * (1.0 + 1e-12) + 1e-15) {
    throw std::domain_error("time exceeds the problem horizon");
  }
  if (t > traces_->horizon * (1.0 + 1e-12) + 1e-15) {
    throw TraceHorizonError{};
  }
  const bool finite = problem_->geometry.finite();
  const double L = problem_->geometry.L;
  const double slack = 1e-12 * (1.0 + L);
  double max_abs_x = 0.0;
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::domain_error("query position must be finite");
    }
    const bool inside = region == 1 ? (x <= slack && (!finite || x >= -L - slack))
                                    : (x >= -slack && (!finite || x <= L + slack));
    if (!inside) {
      throw std::domain_error("query position outside the requested region");
    }
    max_abs_x = std::max(max_abs_x, std::abs(x));
  }
  if (xs.empty()) {
    return {};
  }

  const QuadratureSpec spec = resolve_quadrature(max_abs_x, t);
  const SpectralGrid grid = symmetric_spectral_grid(spec.k_max, spec.panels, spec.nodes_per_panel);
  const std::size_t n = grid.k.size();

  const double m = problem_->mass(region);
  const std::optional<double> k0 = m < 1.0 ? std::optional<double>(1.0) : std::nullopt;
  std::vector<double> alpha(n), cos_t(n), sin_t(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = std::hypot(grid.k[i], m);
    cos_t[i] = std::cos(alpha[i] * t);
    sin_t[i] = std::sin(alpha[i] * t);
  }

  const TermList& list = term_list(options_.variant, finite, region, component);
  const SubtractionPlan& plan = plans_[region - 1][component - 1];

  // Per-node time transforms, one array per distinct (kind, component, edge,
  // branch) source; this is the dominant cost of a batch and is shared by
  // every term and every x in it.
  std::map<TransformKey, std::vector<std::complex<double>>> node_vals;
  for (const IntegrandTerm& term : list.terms) {
    if (term.atom.kind == TermAtom::Kind::InitialData) {
      continue;
    }
    node_vals.try_emplace(TransformKey{term.atom.kind, term.atom.component, term.atom.edge_region,
                                       term.atom.branch_sign});
  }
  for (auto& [key, vals] : node_vals) {
    vals.resize(n);
    node_transforms(key, alpha, t, vals);
    if (plan.active) {
      // Remove the O(1/alpha) endpoint tail of the time transform at the
      // node level; its closed-form inversion is added back after quadrature.
      const std::complex<double> f = source_value(key.kind, key.component, key.edge_region, t, false);
      const std::complex<double> fp = source_value(key.kind, key.component, key.edge_region, t, true);
      const double sign = static_cast<double>(key.branch_sign);
      for (std::size_t i = 0; i < n; ++i) {
        const double sigma = k0 ? grid.k[i] * grid.k[i] / (grid.k[i] * grid.k[i] + (*k0) * (*k0))
                                : 1.0;
        const std::complex<double> osc{cos_t[i], sign * sin_t[i]}; // e^{i*sign*alpha*t}
        const std::complex<double> isa = kI * (sign * alpha[i]);
        vals[i] -= sigma * osc * (f / isa + fp / (alpha[i] * alpha[i]));
      }
    }
  }

  // Spectral weights W(k) = sum of terms.
  std::vector<std::complex<double>> w_nodes(n, 0.0);
  std::vector<std::complex<double>> atom_vals(n);
  for (const IntegrandTerm& term : list.terms) {
    const std::complex<double>* vals = nullptr;
    if (term.atom.kind == TermAtom::Kind::InitialData) {
      const int data_region = term.atom.data_region != 0 ? term.atom.data_region : region;
      const SpatialTransformCache& cache =
          *data_caches_[static_cast<std::size_t>(term.atom.component - 1) * 2 +
                        static_cast<std::size_t>(data_region - 1)];
      const double sign = static_cast<double>(term.atom.branch_sign);
      for (std::size_t i = 0; i < n; ++i) {
        atom_vals[i] = cache(sign * grid.k[i]);
      }
      vals = atom_vals.data();
    } else {
      vals = node_vals
                 .find(TransformKey{term.atom.kind, term.atom.component, term.atom.edge_region,
                                    term.atom.branch_sign})
                 ->second.data();
    }
    const double phase_L = static_cast<double>(term.interval_phase) * L;
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> cc = term.cos_coeff(grid.k[i], alpha[i], m);
      const std::complex<double> ss = term.sin_coeff(grid.k[i], alpha[i], m);
      std::complex<double> contrib = (cc * cos_t[i] + ss * sin_t[i]) * vals[i];
      if (term.interval_phase != 0) {
        contrib *= std::exp(kI * (grid.k[i] * phase_L));
      }
      w_nodes[i] += contrib;
    }
  }

  // Inversion: field(x) = sum_i w_i W_i e^{i k_i x} (fixed summation order
  // for determinism).
  std::vector<std::complex<double>> field(xs.size(), 0.0);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += grid.w[i] * w_nodes[i] * std::exp(kI * (grid.k[i] * xs[j]));
    }
    field[j] = acc;
  }

  // Closed-form inversions of the subtracted tails. At y = 0 the kernel's
  // sign factor takes its inward limit so interface/edge values stay exact.
  if (plan.active) {
    const double x_interior = region == 1 ? (finite ? -0.5 * L : -1.0) : (finite ? 0.5 * L : 1.0);
    for (const SubtractionPlan::Group& g : plan.groups) {
      if (std::abs(g.odd1) + std::abs(g.even1) + std::abs(g.odd2) + std::abs(g.even2) < 1e-14) {
        continue;
      }
      const std::complex<double> f = source_value(g.kind, g.component, g.edge_region, t, false);
      const std::complex<double> fp = source_value(g.kind, g.component, g.edge_region, t, true);
      if (std::abs(f) < 1e-300 && std::abs(fp) < 1e-300) {
        continue;
      }
      const double shift = static_cast<double>(g.interval_phase) * L;
      const double sign_at_zero = (x_interior + shift) >= 0.0 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const CfKernels ker = cf_kernels(xs[j] + shift, sign_at_zero, m, k0);
        field[j] += f * (g.odd1 * ker.odd + g.even1 * ker.even) +
                    fp * (g.odd2 * ker.odd + g.even2 * ker.even);
      }
    }
  }

  return field;
}

TraceTable fixed_point_traces(const InterfaceProblem& problem, const MassiveOptions& options,
                              double dt, int iterations) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (iterations < 1) {
    throw std::invalid_argument("iterations must be >= 1");
  }
  const double horizon = problem.geometry.T;
  const double steps_exact = horizon / dt;
  const auto steps = static_cast<std::size_t>(std::llround(steps_exact));
  if (steps < 1 || std::abs(steps_exact - static_cast<double>(steps)) > 1e-9 * steps_exact) {
    throw std::invalid_argument("dt must tile the time horizon");
  }
  std::vector<double> times(steps + 1);
  for (std::size_t nstep = 0; nstep <= steps; ++nstep) {
    times[nstep] = dt * static_cast<double>(nstep);
  }
  times.back() = horizon;

  using Series = std::array<std::vector<std::complex<double>>, 6>;
  auto make_table = [&](const Series& series) {
    auto table = std::make_shared<TraceTable>();
    table->dt = dt;
    table->horizon = horizon;
    table->times = times;
    table->psi1_at_0 = series[0];
    table->psi2_at_0 = series[1];
    table->psi1_at_minusL = series[2];
    table->psi2_at_minusL = series[3];
    table->psi1_at_L = series[4];
    table->psi2_at_L = series[5];
    table->spline_psi1_at_0 = std::make_shared<UniformCubicSpline>(0.0, dt, series[0]);
    table->spline_psi2_at_0 = std::make_shared<UniformCubicSpline>(0.0, dt, series[1]);
    table->spline_psi1_at_minusL = std::make_shared<UniformCubicSpline>(0.0, dt, series[2]);
    table->spline_psi2_at_minusL = std::make_shared<UniformCubicSpline>(0.0, dt, series[3]);
    table->spline_psi1_at_L = std::make_shared<UniformCubicSpline>(0.0, dt, series[4]);
    table->spline_psi2_at_L = std::make_shared<UniformCubicSpline>(0.0, dt, series[5]);
    return table;
  };

  Series series;
  for (auto& s : series) {
    s.assign(steps + 1, std::complex<double>{0.0, 0.0});
  }
  std::shared_ptr<const TraceTable> table = make_table(series);

  const bool finite = problem.geometry.finite();
  const double L = problem.geometry.L;
  for (int iter = 0; iter < iterations; ++iter) {
    const MassiveEvaluator evaluator(problem, table, options);
    Series next = series;
    for (std::size_t nstep = 0; nstep <= steps; ++nstep) {
      const double t = times[nstep];
      for (int c = 1; c <= 2; ++c) {
        // The two regional representations bracket the shared interface
        // value; their average is the symmetric update.
        const std::complex<double> left = evaluator.evaluate(c, {0.0, t, 1});
        const std::complex<double> right = evaluator.evaluate(c, {0.0, t, 2});
        next[static_cast<std::size_t>(c - 1)][nstep] = 0.5 * (left + right);
      }
      if (finite) {
        next[2][nstep] = problem.boundary_profile(1, 1)(t); // inflow at -L
        next[3][nstep] = evaluator.evaluate(2, {-L, t, 1}); // outflow at -L
        next[4][nstep] = evaluator.evaluate(1, {L, t, 2});  // outflow at +L
        next[5][nstep] = problem.boundary_profile(2, 2)(t); // inflow at +L
      }
    }
    series = std::move(next);
    table = make_table(series);
  }
  return *table;
}

} // namespace utm
