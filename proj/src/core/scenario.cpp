#include "core/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace utm {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

/// Strict object accessor: every key must be consumed exactly once and
/// checked off, so leftovers can be reported by full path.
class StrictObject {
 public:
  StrictObject(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      fail(path_, "expected an object");
    }
  }

  const ordered_json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const ordered_json& need(const std::string& key) {
    const ordered_json* v = find(key);
    if (v == nullptr) {
      fail(path_ + "." + key, "missing required key");
    }
    return *v;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) {
        fail(path_ + "." + item.key(), "unknown key");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  const ordered_json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) {
    fail(path, "expected a number");
  }
  return j.get<double>();
}

double as_positive(const ordered_json& j, const std::string& path) {
  const double v = as_number(j, path);
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(path, "expected a finite positive number");
  }
  return v;
}

int as_int(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    fail(path, "expected an integer");
  }
  return j.get<int>();
}

bool as_bool(const ordered_json& j, const std::string& path) {
  if (!j.is_boolean()) {
    fail(path, "expected a boolean");
  }
  return j.get<bool>();
}

std::vector<double> as_number_array(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) {
    fail(path, "expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Profile parse_profile(const ordered_json& j, const std::string& path, Region region) {
  StrictObject obj(j, path);
  const ordered_json& fam = obj.need("family");
  if (!fam.is_string()) {
    fail(path + ".family", "expected a string");
  }
  const std::string family = fam.get<std::string>();

  double amplitude = 1.0;
  if (const ordered_json* a = obj.find("amplitude")) {
    amplitude = as_number(*a, path + ".amplitude");
    if (!std::isfinite(amplitude)) {
      fail(path + ".amplitude", "expected a finite number");
    }
  }

  Profile out;
  if (family == "zero") {
    out = Profile::zero(region);
  } else if (family == "gaussian_window") {
    const double center = as_number(obj.need("center"), path + ".center");
    const double width = as_positive(obj.need("width"), path + ".width");
    std::optional<double> radius;
    if (const ordered_json* r = obj.find("window_radius")) {
      radius = as_positive(*r, path + ".window_radius");
    }
    out = Profile::gaussian_window(center, width, region, amplitude, radius);
  } else if (family == "decaying_exponential") {
    const double rate = as_positive(obj.need("rate"), path + ".rate");
    out = Profile::decaying_exponential(rate, region, amplitude);
  } else if (family == "sampled_grid") {
    const double x0 = as_number(obj.need("x0"), path + ".x0");
    const double h = as_positive(obj.need("step"), path + ".step");
    const std::vector<double> re = as_number_array(obj.need("re"), path + ".re");
    std::vector<double> im(re.size(), 0.0);
    if (const ordered_json* jim = obj.find("im")) {
      im = as_number_array(*jim, path + ".im");
      if (im.size() != re.size()) {
        fail(path + ".im", "length differs from re");
      }
    }
    if (re.size() < 2) {
      fail(path + ".re", "need at least two samples");
    }
    std::vector<std::complex<double>> values(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      values[i] = {re[i], im[i]};
    }
    out = Profile::sampled_grid(x0, h, std::move(values), region, amplitude);
  } else {
    fail(path + ".family",
         "unknown family '" + family +
             "' (expected zero, gaussian_window, decaying_exponential, or sampled_grid)");
  }
  obj.finish();
  return out;
}

ordered_json profile_to_json(const Profile& p) {
  ordered_json j;
  if (const auto* g = std::get_if<GaussianWindowDescriptor>(&p.descriptor())) {
    j["family"] = "gaussian_window";
    j["center"] = g->center;
    j["width"] = g->width;
    j["window_radius"] = g->window_radius;
  } else if (const auto* d = std::get_if<DecayingExponentialDescriptor>(&p.descriptor())) {
    j["family"] = "decaying_exponential";
    j["rate"] = d->rate;
  } else if (const auto* s = std::get_if<SampledGridDescriptor>(&p.descriptor())) {
    j["family"] = "sampled_grid";
    j["x0"] = s->x0;
    j["step"] = s->h;
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (const auto& v : s->values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
  } else {
    j["family"] = "zero";
  }
  if (p.amplitude() != 1.0) {
    j["amplitude"] = p.amplitude();
  }
  return j;
}

void check_divides(double whole, double step, const std::string& path, const std::string& name) {
  const double ratio = whole / step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    fail(path, "dx must tile " + name + " (got " + name + "/dx = " + std::to_string(ratio) + ")");
  }
}

} // namespace

std::vector<double> QueryGrid::region_points(int region) const {
  const double lo = region == 1 ? region1_min : region2_min;
  const double hi = region == 1 ? region1_max : region2_max;
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(x_count));
  if (x_count == 1) {
    xs.push_back(0.5 * (lo + hi));
    return xs;
  }
  const double step = (hi - lo) / static_cast<double>(x_count - 1);
  for (int i = 0; i < x_count; ++i) {
    xs.push_back(i == x_count - 1 ? hi : lo + step * static_cast<double>(i));
  }
  return xs;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  ordered_json root_json;
  try {
    root_json = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("configuration is not valid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  StrictObject root(root_json, "config");

  {
    StrictObject geometry(root.need("geometry"), "config.geometry");
    const ordered_json& kind = geometry.need("kind");
    if (!kind.is_string()) {
      fail("config.geometry.kind", "expected a string");
    }
    const std::string kind_text = kind.get<std::string>();
    if (kind_text == "half_line") {
      cfg.problem.geometry.kind = Geometry::Kind::HalfLine;
      if (geometry.find("L") != nullptr) {
        fail("config.geometry.L", "only valid for finite_interval geometry");
      }
    } else if (kind_text == "finite_interval") {
      cfg.problem.geometry.kind = Geometry::Kind::FiniteInterval;
      cfg.problem.geometry.L = as_positive(geometry.need("L"), "config.geometry.L");
    } else {
      fail("config.geometry.kind", "expected 'half_line' or 'finite_interval'");
    }
    cfg.problem.geometry.T = as_positive(geometry.need("T"), "config.geometry.T");
    geometry.finish();
  }

  {
    StrictObject masses(root.need("masses"), "config.masses");
    const double m1 = as_number(masses.need("region1"), "config.masses.region1");
    const double m2 = as_number(masses.need("region2"), "config.masses.region2");
    if (m1 < 0.0 || m2 < 0.0 || !std::isfinite(m1) || !std::isfinite(m2)) {
      fail("config.masses", "masses must be finite and non-negative");
    }
    if ((m1 == 0.0) != (m2 == 0.0)) {
      fail("config.masses",
           "mixed massless/massive regions are not supported: use both zero or both positive");
    }
    cfg.problem.mass1 = m1;
    cfg.problem.mass2 = m2;
    masses.finish();
  }

  {
    StrictObject initial(root.need("initial"), "config.initial");
    const char* keys[2][2] = {{"component1_region1", "component1_region2"},
                               {"component2_region1", "component2_region2"}};
    for (int c = 1; c <= 2; ++c) {
      for (int r = 1; r <= 2; ++r) {
        const std::string path = std::string("config.initial.") + keys[c - 1][r - 1];
        cfg.problem.initial[c - 1][r - 1] = parse_profile(
            initial.need(keys[c - 1][r - 1]), path, r == 1 ? Region::Left : Region::Right);
      }
    }
    initial.finish();
  }

  const bool finite = cfg.problem.geometry.finite();
  for (int c = 1; c <= 2; ++c) {
    for (int r = 1; r <= 2; ++r) {
      cfg.problem.boundary[c - 1][r - 1] = Profile::zero(r == 1 ? Region::Left : Region::Right);
    }
  }
  if (const ordered_json* jb = root.find("boundary")) {
    if (!finite) {
      fail("config.boundary", "only valid for finite_interval geometry");
    }
    StrictObject boundary(*jb, "config.boundary");
    const struct {
      const char* key;
      int component;
      int region;
    } slots[] = {{"component1_left", 1, 1},
                 {"component2_left", 2, 1},
                 {"component1_right", 1, 2},
                 {"component2_right", 2, 2}};
    for (const auto& slot : slots) {
      if (const ordered_json* jp = boundary.find(slot.key)) {
        cfg.problem.boundary[slot.component - 1][slot.region - 1] =
            parse_profile(*jp, std::string("config.boundary.") + slot.key,
                          slot.region == 1 ? Region::Left : Region::Right);
      }
    }
    boundary.finish();
  }

  if (const ordered_json* jq = root.find("quadrature")) {
    StrictObject quadrature(*jq, "config.quadrature");
    if (const ordered_json* v = quadrature.find("k_max")) {
      cfg.quadrature.k_max = as_positive(*v, "config.quadrature.k_max");
    }
    if (const ordered_json* v = quadrature.find("panels")) {
      const int p = as_int(*v, "config.quadrature.panels");
      if (p < 1) {
        fail("config.quadrature.panels", "expected a positive integer");
      }
      cfg.quadrature.panels = p;
    }
    if (const ordered_json* v = quadrature.find("nodes_per_panel")) {
      const int nodes = as_int(*v, "config.quadrature.nodes_per_panel");
      if (nodes < 2 || nodes > 64) {
        fail("config.quadrature.nodes_per_panel", "expected an integer in [2, 64]");
      }
      cfg.quadrature.nodes_per_panel = nodes;
    }
    if (const ordered_json* v = quadrature.find("tail_tolerance")) {
      cfg.quadrature.tail_tolerance = as_positive(*v, "config.quadrature.tail_tolerance");
    }
    quadrature.finish();
  }

  if (const ordered_json* v = root.find("erratum_fixes")) {
    cfg.erratum_fixes = as_bool(*v, "config.erratum_fixes");
  }

  if (const ordered_json* jr = root.find("reference")) {
    StrictObject reference(*jr, "config.reference");
    cfg.reference_dx = as_positive(reference.need("dx"), "config.reference.dx");
    reference.finish();
  }
  check_divides(cfg.problem.geometry.T, cfg.reference_dx, "config.reference.dx", "T");
  if (finite) {
    check_divides(cfg.problem.geometry.L, cfg.reference_dx, "config.reference.dx", "L");
  }

  {
    StrictObject queries(root.need("queries"), "config.queries");
    const std::vector<double> r1 = as_number_array(queries.need("region1_x"), "config.queries.region1_x");
    const std::vector<double> r2 = as_number_array(queries.need("region2_x"), "config.queries.region2_x");
    if (r1.size() != 2 || !(r1[0] <= r1[1])) {
      fail("config.queries.region1_x", "expected [min, max] with min <= max");
    }
    if (r2.size() != 2 || !(r2[0] <= r2[1])) {
      fail("config.queries.region2_x", "expected [min, max] with min <= max");
    }
    cfg.queries.region1_min = r1[0];
    cfg.queries.region1_max = r1[1];
    cfg.queries.region2_min = r2[0];
    cfg.queries.region2_max = r2[1];
    const double L = cfg.problem.geometry.L;
    if (cfg.queries.region1_max > 0.0 || (finite && cfg.queries.region1_min < -L)) {
      fail("config.queries.region1_x", "range must lie inside region 1 (x <= 0)");
    }
    if (cfg.queries.region2_min < 0.0 || (finite && cfg.queries.region2_max > L)) {
      fail("config.queries.region2_x", "range must lie inside region 2 (x >= 0)");
    }
    cfg.queries.x_count = as_int(queries.need("x_count"), "config.queries.x_count");
    if (cfg.queries.x_count < 1) {
      fail("config.queries.x_count", "expected a positive integer");
    }
    cfg.queries.times = as_number_array(queries.need("times"), "config.queries.times");
    if (cfg.queries.times.empty()) {
      fail("config.queries.times", "expected at least one time");
    }
    for (std::size_t i = 0; i < cfg.queries.times.size(); ++i) {
      const double t = cfg.queries.times[i];
      if (!(t >= 0.0) || t > cfg.problem.geometry.T * (1.0 + 1e-12)) {
        fail("config.queries.times[" + std::to_string(i) + "]",
             "times must lie in [0, T]");
      }
    }
    queries.finish();
  }

  if (const ordered_json* jo = root.find("output")) {
    StrictObject output(*jo, "config.output");
    const ordered_json& dir = output.need("directory");
    if (!dir.is_string()) {
      fail("config.output.directory", "expected a string");
    }
    cfg.output_directory = dir.get<std::string>();
    output.finish();
  }

  root.finish();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open configuration file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  ordered_json j;
  const bool finite = cfg.problem.geometry.finite();
  j["geometry"]["kind"] = finite ? "finite_interval" : "half_line";
  if (finite) {
    j["geometry"]["L"] = cfg.problem.geometry.L;
  }
  j["geometry"]["T"] = cfg.problem.geometry.T;
  j["masses"]["region1"] = cfg.problem.mass1;
  j["masses"]["region2"] = cfg.problem.mass2;
  const char* initial_keys[2][2] = {{"component1_region1", "component1_region2"},
                                    {"component2_region1", "component2_region2"}};
  for (int c = 1; c <= 2; ++c) {
    for (int r = 1; r <= 2; ++r) {
      j["initial"][initial_keys[c - 1][r - 1]] =
          profile_to_json(cfg.problem.initial_profile(c, r));
    }
  }
  if (finite) {
    const struct {
      const char* key;
      int component;
      int region;
    } slots[] = {{"component1_left", 1, 1},
                 {"component2_left", 2, 1},
                 {"component1_right", 1, 2},
                 {"component2_right", 2, 2}};
    ordered_json jb = ordered_json::object();
    for (const auto& slot : slots) {
      const Profile& p = cfg.problem.boundary_profile(slot.component, slot.region);
      if (!p.is_zero()) {
        jb[slot.key] = profile_to_json(p);
      }
    }
    if (!jb.empty()) {
      j["boundary"] = std::move(jb);
    }
  }
  ordered_json jq = ordered_json::object();
  if (cfg.quadrature.k_max > 0.0) {
    jq["k_max"] = cfg.quadrature.k_max;
  }
  if (cfg.quadrature.panels > 0) {
    jq["panels"] = cfg.quadrature.panels;
  }
  jq["nodes_per_panel"] = cfg.quadrature.nodes_per_panel;
  jq["tail_tolerance"] = cfg.quadrature.tail_tolerance;
  j["quadrature"] = std::move(jq);
  j["erratum_fixes"] = cfg.erratum_fixes;
  j["reference"]["dx"] = cfg.reference_dx;
  j["queries"]["region1_x"] = {cfg.queries.region1_min, cfg.queries.region1_max};
  j["queries"]["region2_x"] = {cfg.queries.region2_min, cfg.queries.region2_max};
  j["queries"]["x_count"] = cfg.queries.x_count;
  j["queries"]["times"] = cfg.queries.times;
  j["output"]["directory"] = cfg.output_directory;
  return j.dump(2) + "\n";
}

} // namespace utm
