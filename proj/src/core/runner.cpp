#include "core/runner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "core/massive.hpp"
#include "core/massless.hpp"
#include "core/mesh.hpp"

namespace utm {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file for writing: " + path.string());
  }
  return out;
}

TermVariant effective_variant(const ScenarioConfig& cfg, const RunOptions& opt) {
  return opt.variant_override.value_or(cfg.erratum_fixes ? TermVariant::Corrected
                                                         : TermVariant::Transcribed);
}

/// One value of the query grid in the fixed iteration order (region-major,
/// then component, then time in config order, then x ascending).
struct QueryValue {
  int region = 1;
  int component = 1;
  double x = 0.0;
  double t = 0.0;
  std::complex<double> utm;
  std::complex<double> reference;
};

std::string dependency_report(bool massless_path, bool finite, TermVariant variant) {
  std::ostringstream out;
  if (massless_path) {
    out << "  massless transport: component 1 reads only its own initial data along the\n"
        << "  backward characteristic (plus the component-1 inflow datum when that\n"
        << "  characteristic exits the left boundary); component 2 mirrors this on the\n"
        << "  right. No interface trace and no cross-component slot is read.\n";
    return out.str();
  }
  bool component1_reads_component2_trace = false;
  for (int region = 1; region <= 2; ++region) {
    for (int component = 1; component <= 2; ++component) {
      const TermList& list = term_list(variant, finite, region, component);
      out << "  region " << region << " component " << component << " reads:";
      for (const std::string& slot : referenced_slots(list)) {
        out << ' ' << slot;
        if (component == 1 && slot.rfind("trace:c2", 0) == 0) {
          component1_reads_component2_trace = true;
        }
      }
      out << '\n';
    }
  }
  out << "  component-1 lists read component-2 interface trace slots: "
      << (component1_reads_component2_trace ? "yes" : "no") << '\n';
  return out.str();
}

/// 50 interior sample points of a closed range (open-interval midpoints, so
/// neither the interface nor an outer boundary is ever touched).
std::vector<double> interior_points(double lo, double hi) {
  std::vector<double> xs;
  xs.reserve(50);
  for (int j = 0; j < 50; ++j) {
    xs.push_back(lo + (static_cast<double>(j) + 0.5) * (hi - lo) / 50.0);
  }
  return xs;
}

} // namespace

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (opt.threads < 1) {
    throw ScenarioError("options: threads must be >= 1");
  }
  RunSummary sum;
  sum.massless = cfg.problem.massless();
  sum.variant = effective_variant(cfg, opt);

  const fs::path dir = cfg.output_directory;
  fs::create_directories(dir);

  const std::vector<double> xs1 = cfg.queries.region_points(1);
  const std::vector<double> xs2 = cfg.queries.region_points(2);
  const std::vector<double>& times = cfg.queries.times;

  // Reference mesh (conservation always on; field dump only when asked).
  std::ofstream mesh_csv;
  if (opt.dump_traces) {
    mesh_csv = open_out(dir / "mesh.csv");
    mesh_csv << "x,t,region,psi1_re,psi1_im,psi2_re,psi2_im\n";
  }
  const ReferenceSolution ref = solve_reference(cfg.problem, cfg.reference_dx, times, true,
                                                opt.dump_traces ? &mesh_csv : nullptr);
  sum.conservation_residual = ref.conservation().worst_residual();

  if (xs1.front() < ref.left_edge() - 1e-12 || xs2.back() > ref.right_edge() + 1e-12) {
    throw ScenarioError("config.queries: query range [" + fmt(xs1.front()) + ", " +
                        fmt(xs2.back()) + "] exceeds the reference mesh extent [" +
                        fmt(ref.left_edge()) + ", " + fmt(ref.right_edge()) + "]");
  }

  if (opt.dump_traces) {
    std::ofstream traces_csv = open_out(dir / "traces.csv");
    traces_csv << "t,psi1_0_re,psi1_0_im,psi2_0_re,psi2_0_im,psi1_left_re,psi1_left_im,"
                  "psi2_left_re,psi2_left_im,psi1_right_re,psi1_right_im,psi2_right_re,"
                  "psi2_right_im\n";
    const TraceTable& tt = ref.traces();
    for (std::size_t n = 0; n < tt.times.size(); ++n) {
      traces_csv << fmt(tt.times[n]);
      for (const auto* series :
           {&tt.psi1_at_0, &tt.psi2_at_0, &tt.psi1_at_minusL, &tt.psi2_at_minusL, &tt.psi1_at_L,
            &tt.psi2_at_L}) {
        traces_csv << ',' << fmt((*series)[n].real()) << ',' << fmt((*series)[n].imag());
      }
      traces_csv << '\n';
    }
    sum.files.push_back((dir / "mesh.csv").string());
    sum.files.push_back((dir / "traces.csv").string());
  }

  std::shared_ptr<const TraceTable> traces;
  std::unique_ptr<MassiveEvaluator> massive;
  if (!sum.massless) {
    traces = std::make_shared<TraceTable>(ref.traces());
    MassiveOptions mopt;
    mopt.variant = sum.variant;
    mopt.quadrature = cfg.quadrature;
    mopt.threads = opt.threads;
    massive = std::make_unique<MassiveEvaluator>(cfg.problem, traces, mopt);
  }

  const auto evaluate = [&](int component, int region, const std::vector<double>& xs,
                            double t) -> std::vector<std::complex<double>> {
    try {
      if (sum.massless) {
        std::vector<std::complex<double>> out;
        out.reserve(xs.size());
        for (double x : xs) {
          out.push_back(eval_massless(cfg.problem, component, {x, t, region}));
        }
        return out;
      }
      return massive->evaluate_grid(component, region, xs, t);
    } catch (const std::exception& e) {
      throw std::runtime_error("solver failure while evaluating region " +
                               std::to_string(region) + ", component " +
                               std::to_string(component) + " at t = " + fmt(t) + ": " + e.what());
    }
  };

  // Query grid: UTM and reference values in one fixed order.
  std::vector<QueryValue> values;
  values.reserve(2 * 2 * times.size() * static_cast<std::size_t>(cfg.queries.x_count));
  for (int region = 1; region <= 2; ++region) {
    const std::vector<double>& xs = region == 1 ? xs1 : xs2;
    for (int component = 1; component <= 2; ++component) {
      for (double t : times) {
        const std::vector<std::complex<double>> utm_vals = evaluate(component, region, xs, t);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          QueryValue v;
          v.region = region;
          v.component = component;
          v.x = xs[j];
          v.t = t;
          v.utm = utm_vals[j];
          v.reference = ref.sample(component, region, xs[j], t);
          values.push_back(v);
        }
      }
    }
  }

  {
    std::ofstream solution = open_out(dir / "solution.csv");
    solution << "region,component,x,t,re,im,method\n";
    for (const char* method : {"utm", "reference"}) {
      const bool is_utm = method[0] == 'u';
      for (const QueryValue& v : values) {
        const std::complex<double> z = is_utm ? v.utm : v.reference;
        solution << v.region << ',' << v.component << ',' << fmt(v.x) << ',' << fmt(v.t) << ','
                 << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << method << '\n';
      }
    }
    sum.files.push_back((dir / "solution.csv").string());
  }

  {
    std::ofstream errors = open_out(dir / "errors.csv");
    errors << "region,component,x,t,abs_error,kind\n";
    double sumsq = 0.0;
    for (const QueryValue& v : values) {
      const double err = std::abs(v.utm - v.reference);
      sum.linf = std::max(sum.linf, err);
      sumsq += err * err;
      errors << v.region << ',' << v.component << ',' << fmt(v.x) << ',' << fmt(v.t) << ','
             << fmt(err) << ",point\n";
    }
    sum.l2 = values.empty() ? 0.0 : std::sqrt(sumsq / static_cast<double>(values.size()));
    errors << "0,0,0,0," << fmt(sum.linf) << ",linf\n";
    errors << "0,0,0,0," << fmt(sum.l2) << ",l2\n";
    sum.files.push_back((dir / "errors.csv").string());
  }

  // Invariant checks: interface continuity on a 20-point t-grid ...
  for (int i = 1; i <= 20; ++i) {
    const double t = cfg.problem.geometry.T * static_cast<double>(i) / 20.0;
    for (int component = 1; component <= 2; ++component) {
      const std::complex<double> left = evaluate(component, 1, {0.0}, t).front();
      const std::complex<double> right = evaluate(component, 2, {0.0}, t).front();
      sum.continuity = std::max(sum.continuity, std::abs(left - right));
    }
  }
  // ... and initial-condition recovery at t = 1e-6 on interior points.
  const double recovery_time = 1e-6;
  for (int region = 1; region <= 2; ++region) {
    const std::vector<double> xs =
        region == 1 ? interior_points(cfg.queries.region1_min, cfg.queries.region1_max)
                    : interior_points(cfg.queries.region2_min, cfg.queries.region2_max);
    for (int component = 1; component <= 2; ++component) {
      const std::vector<std::complex<double>> got = evaluate(component, region, xs, recovery_time);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const std::complex<double> want = cfg.problem.initial_profile(component, region)(xs[j]);
        sum.recovery = std::max(sum.recovery, std::abs(got[j] - want));
      }
    }
  }

  {
    std::ofstream report = open_out(dir / "report.txt");
    report << "solver: " << (sum.massless ? "massless transport (closed form)"
                                          : "massive spectral representation")
           << '\n';
    if (!sum.massless) {
      report << "term variant: "
             << (sum.variant == TermVariant::Corrected ? "corrected" : "transcribed") << '\n';
      const double max_abs_x = std::max(std::abs(xs1.front()), std::abs(xs2.back()));
      const double max_t = *std::max_element(times.begin(), times.end());
      const QuadratureSpec spec = massive->resolve_quadrature(max_abs_x, max_t);
      report << "quadrature: k_max = " << fmt(spec.k_max) << ", panels = " << spec.panels
             << ", nodes_per_panel = " << spec.nodes_per_panel
             << ", tail_tolerance = " << fmt(spec.tail_tolerance) << '\n';
      report << "tail subtraction active (region1 c1,c2; region2 c1,c2): "
             << massive->subtraction_active(1, 1) << ',' << massive->subtraction_active(1, 2)
             << ';' << massive->subtraction_active(2, 1) << ',' << massive->subtraction_active(2, 2)
             << '\n';
    }
    report << "reference mesh dx: " << fmt(cfg.reference_dx) << '\n';
    report << "utm vs reference: linf = " << fmt(sum.linf) << ", l2 = " << fmt(sum.l2) << '\n';
    report << "interface continuity (20-point t-grid): worst = " << fmt(sum.continuity)
           << (sum.massless ? " (massless: must be exactly 0)" : "") << '\n';
    report << "initial-condition recovery at t = 1e-06: worst = " << fmt(sum.recovery) << '\n';
    report << "conservation residual (reference mesh): " << fmt(sum.conservation_residual)
           << '\n';
    report << "dependency report:\n"
           << dependency_report(sum.massless, cfg.problem.geometry.finite(), sum.variant);
    sum.files.push_back((dir / "report.txt").string());
  }

  return sum;
}

std::vector<ConvergenceLevel> run_convergence(const ScenarioConfig& cfg, int levels,
                                              const RunOptions& opt) {
  if (levels < 3) {
    throw ScenarioError("convergence study requires levels >= 3");
  }
  if (opt.threads < 1) {
    throw ScenarioError("options: threads must be >= 1");
  }
  const bool massless_path = cfg.problem.massless();
  const TermVariant variant = effective_variant(cfg, opt);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  const std::vector<double> xs1 = cfg.queries.region_points(1);
  const std::vector<double> xs2 = cfg.queries.region_points(2);
  const std::vector<double>& times = cfg.queries.times;

  // Flattened query-grid field in the fixed iteration order.
  const auto sample_reference = [&](const ReferenceSolution& ref) {
    std::vector<std::complex<double>> field;
    for (int region = 1; region <= 2; ++region) {
      const std::vector<double>& xs = region == 1 ? xs1 : xs2;
      for (int component = 1; component <= 2; ++component) {
        for (double t : times) {
          for (double x : xs) {
            field.push_back(ref.sample(component, region, x, t));
          }
        }
      }
    }
    return field;
  };
  const auto evaluate_field = [&](const MassiveEvaluator* massive) {
    std::vector<std::complex<double>> field;
    for (int region = 1; region <= 2; ++region) {
      const std::vector<double>& xs = region == 1 ? xs1 : xs2;
      for (int component = 1; component <= 2; ++component) {
        for (double t : times) {
          if (massless_path) {
            for (double x : xs) {
              field.push_back(eval_massless(cfg.problem, component, {x, t, region}));
            }
          } else {
            const auto vals = massive->evaluate_grid(component, region, xs, t);
            field.insert(field.end(), vals.begin(), vals.end());
          }
        }
      }
    }
    return field;
  };
  const auto linf_diff = [](const std::vector<std::complex<double>>& a,
                            const std::vector<std::complex<double>>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
  };

  std::vector<ConvergenceLevel> rows(static_cast<std::size_t>(levels));
  std::vector<std::vector<std::complex<double>>> ref_fields(rows.size());
  std::vector<std::complex<double>> massless_field;
  std::shared_ptr<const TraceTable> finest_traces;

  for (int level = 0; level < levels; ++level) {
    auto& row = rows[static_cast<std::size_t>(level)];
    row.level = level;
    row.dx = cfg.reference_dx / static_cast<double>(1 << level);
    const ReferenceSolution ref = solve_reference(cfg.problem, row.dx, times, true);
    ref_fields[static_cast<std::size_t>(level)] = sample_reference(ref);
    row.conservation_residual = ref.conservation().worst_residual();

    std::vector<std::complex<double>> utm_field;
    if (massless_path) {
      if (massless_field.empty()) {
        massless_field = evaluate_field(nullptr);
      }
      utm_field = massless_field;
    } else {
      auto traces = std::make_shared<TraceTable>(ref.traces());
      MassiveOptions mopt;
      mopt.variant = variant;
      mopt.quadrature = cfg.quadrature;
      mopt.threads = opt.threads;
      const MassiveEvaluator massive(cfg.problem, traces, mopt);
      utm_field = evaluate_field(&massive);
      if (level == levels - 1) {
        finest_traces = std::move(traces);
      }
    }
    row.utm_vs_reference_linf = linf_diff(utm_field, ref_fields[static_cast<std::size_t>(level)]);
  }

  for (int level = 0; level < levels; ++level) {
    auto& row = rows[static_cast<std::size_t>(level)];
    row.reference_self_diff =
        level + 1 < levels ? linf_diff(ref_fields[static_cast<std::size_t>(level)],
                                       ref_fields[static_cast<std::size_t>(level + 1)])
                           : nan;
    row.reference_order =
        (level >= 1 && level + 1 < levels)
            ? std::log2(rows[static_cast<std::size_t>(level - 1)].reference_self_diff /
                        row.reference_self_diff)
            : nan;
    row.conservation_order =
        level >= 1 ? std::log2(rows[static_cast<std::size_t>(level - 1)].conservation_residual /
                               row.conservation_residual)
                   : nan;
    row.panels = 0;
    row.panel_self_diff = nan;
  }

  // Panel-doubling study against the finest trace table (massive only): the
  // quadrature error isolated from the mesh error.
  if (!massless_path) {
    MassiveOptions base;
    base.variant = variant;
    base.quadrature = cfg.quadrature;
    base.threads = opt.threads;
    const MassiveEvaluator probe(cfg.problem, finest_traces, base);
    const double max_abs_x = std::max(std::abs(xs1.front()), std::abs(xs2.back()));
    const double max_t = *std::max_element(times.begin(), times.end());
    const int base_panels = probe.resolve_quadrature(max_abs_x, max_t).panels;

    std::vector<std::vector<std::complex<double>>> panel_fields(rows.size() + 1);
    for (std::size_t l = 0; l < panel_fields.size(); ++l) {
      MassiveOptions mopt = base;
      mopt.quadrature.panels = base_panels * (1 << l);
      const MassiveEvaluator massive(cfg.problem, finest_traces, mopt);
      panel_fields[l] = evaluate_field(&massive);
    }
    for (std::size_t l = 0; l < rows.size(); ++l) {
      rows[l].panels = base_panels * (1 << l);
      rows[l].panel_self_diff = linf_diff(panel_fields[l], panel_fields[l + 1]);
    }
  }

  const fs::path dir = cfg.output_directory;
  fs::create_directories(dir);
  std::ofstream csv = open_out(dir / "convergence.csv");
  csv << "level,dx,utm_vs_reference_linf,reference_self_diff,reference_order,"
         "conservation_residual,conservation_order,panels,panel_self_diff\n";
  for (const ConvergenceLevel& row : rows) {
    csv << row.level << ',' << fmt(row.dx) << ',' << fmt(row.utm_vs_reference_linf) << ','
        << fmt(row.reference_self_diff) << ',' << fmt(row.reference_order) << ','
        << fmt(row.conservation_residual) << ',' << fmt(row.conservation_order) << ','
        << row.panels << ',' << fmt(row.panel_self_diff) << '\n';
  }
  return rows;
}

} // namespace utm
