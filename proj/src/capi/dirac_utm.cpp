#include "dirac_utm.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "core/massive.hpp"
#include "core/massless.hpp"
#include "core/mesh.hpp"
#include "core/runner.hpp"
#include "core/scenario.hpp"

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& message) { g_last_error = message; }

/// Maps C++ failures onto the C status codes; `f` does the work.
template <typename F>
dirac_utm_status guarded(F&& f) {
  try {
    f();
    return DIRAC_UTM_OK;
  } catch (const utm::ScenarioError& e) {
    set_error(e.what());
    return DIRAC_UTM_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DIRAC_UTM_ERR_CONFIG;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return DIRAC_UTM_ERR_INVALID_ARG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DIRAC_UTM_ERR_SOLVER;
  }
}

dirac_utm_status invalid_call(const char* message) {
  set_error(message);
  return DIRAC_UTM_ERR_INVALID_ARG;
}

utm::RunOptions to_run_options(const dirac_utm_options* options) {
  utm::RunOptions out;
  if (options != nullptr) {
    if (options->erratum_fixes > 0) {
      out.variant_override = utm::TermVariant::Corrected;
    } else if (options->erratum_fixes < 0) {
      out.variant_override = utm::TermVariant::Transcribed;
    }
    out.dump_traces = options->dump_traces != 0;
    out.threads = options->threads;
  }
  return out;
}

} // namespace

struct dirac_utm_scenario {
  utm::ScenarioConfig config;
};

struct dirac_utm_solver {
  utm::ScenarioConfig config;
  bool massless = false;
  std::shared_ptr<const utm::ReferenceSolution> reference;
  std::unique_ptr<utm::MassiveEvaluator> massive;
};

extern "C" {

void dirac_utm_options_init(dirac_utm_options* options) {
  if (options != nullptr) {
    options->erratum_fixes = 0;
    options->dump_traces = 0;
    options->threads = 1;
  }
}

dirac_utm_status dirac_utm_scenario_from_file(const char* path, dirac_utm_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return invalid_call("dirac_utm_scenario_from_file: path and out must be non-null");
  }
  *out = nullptr;
  return guarded([&] {
    auto scenario = std::make_unique<dirac_utm_scenario>();
    scenario->config = utm::load_scenario(path);
    *out = scenario.release();
  });
}

dirac_utm_status dirac_utm_scenario_from_json(const char* json_text, dirac_utm_scenario** out) {
  if (json_text == nullptr || out == nullptr) {
    return invalid_call("dirac_utm_scenario_from_json: json_text and out must be non-null");
  }
  *out = nullptr;
  return guarded([&] {
    auto scenario = std::make_unique<dirac_utm_scenario>();
    scenario->config = utm::parse_scenario(json_text);
    *out = scenario.release();
  });
}

dirac_utm_status dirac_utm_scenario_to_json(const dirac_utm_scenario* scenario, char** out_text) {
  if (scenario == nullptr || out_text == nullptr) {
    return invalid_call("dirac_utm_scenario_to_json: scenario and out_text must be non-null");
  }
  *out_text = nullptr;
  return guarded([&] {
    const std::string text = utm::serialize_scenario(scenario->config);
    char* copy = static_cast<char*>(std::malloc(text.size() + 1));
    if (copy == nullptr) {
      throw std::bad_alloc();
    }
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out_text = copy;
  });
}

void dirac_utm_scenario_free(dirac_utm_scenario* scenario) { delete scenario; }

dirac_utm_status dirac_utm_run(const dirac_utm_scenario* scenario,
                               const dirac_utm_options* options,
                               dirac_utm_run_summary* out_summary) {
  if (scenario == nullptr) {
    return invalid_call("dirac_utm_run: scenario must be non-null");
  }
  return guarded([&] {
    const utm::RunSummary sum = utm::run_scenario(scenario->config, to_run_options(options));
    if (out_summary != nullptr) {
      out_summary->linf = sum.linf;
      out_summary->l2 = sum.l2;
      out_summary->continuity = sum.continuity;
      out_summary->recovery = sum.recovery;
      out_summary->conservation_residual = sum.conservation_residual;
      out_summary->used_corrected_terms = sum.variant == utm::TermVariant::Corrected ? 1 : 0;
      out_summary->massless = sum.massless ? 1 : 0;
    }
  });
}

dirac_utm_status dirac_utm_convergence(const dirac_utm_scenario* scenario,
                                       const dirac_utm_options* options, int levels) {
  if (scenario == nullptr) {
    return invalid_call("dirac_utm_convergence: scenario must be non-null");
  }
  return guarded([&] { utm::run_convergence(scenario->config, levels, to_run_options(options)); });
}

dirac_utm_status dirac_utm_solver_create(const dirac_utm_scenario* scenario,
                                         const dirac_utm_options* options,
                                         dirac_utm_solver** out) {
  if (scenario == nullptr || out == nullptr) {
    return invalid_call("dirac_utm_solver_create: scenario and out must be non-null");
  }
  *out = nullptr;
  return guarded([&] {
    const utm::RunOptions ropt = to_run_options(options);
    if (ropt.threads < 1) {
      throw utm::ScenarioError("options: threads must be >= 1");
    }
    auto solver = std::make_unique<dirac_utm_solver>();
    solver->config = scenario->config;
    solver->massless = solver->config.problem.massless();
    solver->reference = std::make_shared<const utm::ReferenceSolution>(utm::solve_reference(
        solver->config.problem, solver->config.reference_dx, solver->config.queries.times));
    if (!solver->massless) {
      auto traces = std::make_shared<const utm::TraceTable>(solver->reference->traces());
      utm::MassiveOptions mopt;
      mopt.variant = ropt.variant_override.value_or(
          solver->config.erratum_fixes ? utm::TermVariant::Corrected
                                       : utm::TermVariant::Transcribed);
      mopt.quadrature = solver->config.quadrature;
      mopt.threads = ropt.threads;
      solver->massive =
          std::make_unique<utm::MassiveEvaluator>(solver->config.problem, traces, mopt);
    }
    *out = solver.release();
  });
}

namespace {

dirac_utm_status eval_common(const dirac_utm_solver* solver, int component, int region,
                             const double* xs, size_t count, double t, double* out_re,
                             double* out_im, bool reference_path) {
  if (solver == nullptr || xs == nullptr || out_re == nullptr || out_im == nullptr) {
    return invalid_call("dirac_utm_solver_eval: all pointer arguments must be non-null");
  }
  return guarded([&] {
    if (component < 1 || component > 2 || region < 1 || region > 2) {
      throw std::domain_error("component and region must be 1 or 2");
    }
    const std::vector<double> points(xs, xs + count);
    std::vector<std::complex<double>> values;
    if (reference_path) {
      values.reserve(count);
      for (double x : points) {
        if (x < solver->reference->left_edge() - 1e-12 ||
            x > solver->reference->right_edge() + 1e-12 || (region == 1 && x > 1e-12) ||
            (region == 2 && x < -1e-12)) {
          throw std::domain_error("query position outside the reference mesh for that region");
        }
        values.push_back(solver->reference->sample(component, region, x, t));
      }
    } else if (solver->massless) {
      values.reserve(count);
      for (double x : points) {
        values.push_back(utm::eval_massless(solver->config.problem, component, {x, t, region}));
      }
    } else {
      values = solver->massive->evaluate_grid(component, region, points, t);
    }
    for (size_t i = 0; i < count; ++i) {
      out_re[i] = values[i].real();
      out_im[i] = values[i].imag();
    }
  });
}

} // namespace

dirac_utm_status dirac_utm_solver_eval(const dirac_utm_solver* solver, int component, int region,
                                       const double* xs, size_t count, double t, double* out_re,
                                       double* out_im) {
  return eval_common(solver, component, region, xs, count, t, out_re, out_im, false);
}

dirac_utm_status dirac_utm_solver_eval_reference(const dirac_utm_solver* solver, int component,
                                                 int region, const double* xs, size_t count,
                                                 double t, double* out_re, double* out_im) {
  return eval_common(solver, component, region, xs, count, t, out_re, out_im, true);
}

void dirac_utm_solver_free(dirac_utm_solver* solver) { delete solver; }

const char* dirac_utm_last_error(void) { return g_last_error.c_str(); }

void dirac_utm_string_free(char* text) { std::free(text); }

const char* dirac_utm_version(void) { return "1.0.0"; }

} // extern "C"
