#include "kerr2jc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFigureIds[] = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};

// ---------------------------------------------------------------------------
// Sectioned key = value text

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

json parse_scalar(std::string_view token, const std::string& where) {
  token = trim(token);
  if (token.empty()) throw ConfigError(where, "missing value");
  if (token.front() == '"') {
    if (token.size() < 2 || token.back() != '"') throw ConfigError(where, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
      if (token[i] == '\\' && i + 2 < token.size()) ++i;
      out += token[i];
    }
    return out;
  }
  if (token == "true") return true;
  if (token == "false") return false;

  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const bool integral = token.find_first_of(".eE") == std::string_view::npos &&
                        token.find("inf") == std::string_view::npos &&
                        token.find("nan") == std::string_view::npos;
  if (integral) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(begin + (*begin == '+' ? 1 : 0), end, v);
    if (ec == std::errc() && ptr == end) return v;
  }
  double d = 0.0;
  const auto [ptr, ec] = std::from_chars(begin + (*begin == '+' ? 1 : 0), end, d);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(where, "cannot parse value '" + std::string(token) + "'");
  }
  return d;
}

json parse_value(std::string_view token, const std::string& where) {
  token = trim(token);
  if (!token.empty() && token.front() == '[') {
    if (token.back() != ']') throw ConfigError(where, "unterminated array");
    json arr = json::array();
    const std::string_view body = trim(token.substr(1, token.size() - 2));
    if (body.empty()) return arr;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '"') quoted = !quoted;
      if (i == body.size() || (body[i] == ',' && !quoted)) {
        const std::string_view item = trim(body.substr(start, i - start));
        if (item.empty()) {
          if (i == body.size()) break;  // trailing comma
          throw ConfigError(where, "empty array element");
        }
        arr.push_back(parse_scalar(item, where));
        start = i + 1;
      }
    }
    return arr;
  }
  return parse_scalar(token, where);
}

json text_to_tree(std::string_view text) {
  json root = json::object();
  json* section = &root;
  std::string section_name;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string stripped = strip_comment(raw_line);
    const std::string_view line = trim(stripped);
    if (line.empty()) continue;
    const std::string where_line = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where_line, "malformed section header");
      section_name = std::string(trim(line.substr(1, line.size() - 2)));
      if (section_name.empty()) throw ConfigError(where_line, "empty section name");
      if (root.contains(section_name)) throw ConfigError(section_name, "section appears twice");
      root[section_name] = json::object();
      section = &root[section_name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where_line, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(where_line, "empty key");
    const std::string where = section_name.empty() ? key : section_name + "." + key;
    if (section->contains(key)) throw ConfigError(where, "key appears twice");
    (*section)[key] = parse_value(line.substr(eq + 1), where);
  }
  return root;
}

// ---------------------------------------------------------------------------
// Strict typed access with key names in every error

class Section {
 public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    if (!root.contains(name_)) return;
    const json& node = root.at(name_);
    if (!node.is_object()) throw ConfigError(name_, "must be a section");
    node_ = &node;
  }

  bool present() const { return node_ != nullptr; }
  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  double number(const std::string& key, double fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(where(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(where(key), "must be finite");
    return d;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key, 0.0);
  }

  int integer(const std::string& key, int fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    return as_int(*v, key);
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(where(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(where(key), "expected a quoted string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(where(key), "expected an array of numbers");
    std::vector<double> out;
    for (const json& x : *v) {
      if (!x.is_number()) throw ConfigError(where(key), "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_array()) throw ConfigError(where(key), "expected an array of integers");
    std::vector<int> out;
    for (const json& x : *v) out.push_back(as_int(x, key));
    return out;
  }

  /// Throws for keys that were never read.
  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!used_.count(key)) throw ConfigError(where(key), "unknown key");
    }
  }

  std::string where(const std::string& key) const { return name_ + "." + key; }

 private:
  const json* lookup(const std::string& key) {
    if (!has(key)) return nullptr;
    used_.insert(key);
    return &node_->at(key);
  }

  int as_int(const json& v, const std::string& key) const {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
    }
    throw ConfigError(where(key), "expected an integer");
  }

  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> used_;
};

const char* method_name(PropagationMethod m) { return m == PropagationMethod::Pade ? "pade" : "runge_kutta"; }
const char* extremum_name(ExtremumKind k) { return k == ExtremumKind::MinimizeG2 ? "min_g2" : "max_n_s"; }
const char* branch_name(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }

ModelParams read_model(Section& s) {
  ModelParams p;
  p.delta_c = s.number("delta_c", 0.0);
  p.delta_a = s.number("delta_a", 2.0 * p.delta_c);
  p.chi = s.number("chi", 0.0);
  p.g = s.number("g", 4.0);
  p.eta = s.number("eta", 0.0);
  p.omega = s.number("omega", 0.0);
  p.kappa = s.number("kappa", 1.0);
  p.gamma = s.number("gamma", 0.1);
  s.finish();
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError("model", e.what());
  }
  return p;
}

RawParams read_raw(Section& s) {
  RawParams r;
  r.g0 = s.number("g0", 0.0);
  r.delta_1 = s.number("delta_1", 0.0);
  r.omega_1 = s.number("omega_1", 0.0);
  r.omega_2 = s.number("omega_2", 0.0);
  r.delta_2 = s.number("delta_2", 0.0);
  r.delta_m = s.number("delta_m", 0.0);
  r.delta_c_prime = s.number("delta_c_prime", 0.0);
  r.chi = s.number("chi", 0.0);
  r.eta = s.number("eta", 0.0);
  r.kappa = s.number("kappa", 1.0);
  r.gamma = s.number("gamma", 0.1);
  s.finish();
  if (r.delta_1 == 0.0) throw ConfigError("raw.delta_1", "must be nonzero (division by zero)");
  if (r.delta_2 == 0.0) throw ConfigError("raw.delta_2", "must be nonzero (division by zero)");
  try {
    derive_effective_params(r).validate();
  } catch (const DomainError& e) {
    throw ConfigError("raw", e.what());
  }
  return r;
}

std::optional<AxisConfig> read_axis(Section& s, const std::string& prefix) {
  const bool any = s.has(prefix) || s.has(prefix + "_values") || s.has(prefix + "_min") ||
                   s.has(prefix + "_max") || s.has(prefix + "_points");
  if (!any) return std::nullopt;
  AxisConfig a;
  a.parameter = s.string(prefix, "");
  a.values = s.numbers(prefix + "_values", {});
  a.min = s.optional_number(prefix + "_min");
  a.max = s.optional_number(prefix + "_max");
  a.points = s.integer(prefix + "_points", 0);
  const std::string key = s.where(prefix);
  if (a.parameter.empty()) throw ConfigError(key, "parameter name missing");
  if (!s.has(prefix + "_values") && !(a.min && a.max)) {
    if (a.min || a.max || a.points != 0) throw ConfigError(key, "needs both _min and _max");
  }
  a.resolve(key);
  return a;
}

RunConfig tree_to_config(const json& root, std::optional<Task> default_task) {
  if (!root.is_object()) throw ConfigError("", "configuration must be an object");
  static const std::set<std::string> known{"task",     "model", "raw",   "numerics", "refine",
                                           "spectrum", "correlate", "sweep", "figure", "units"};
  for (const auto& [key, value] : root.items()) {
    if (!known.count(key)) throw ConfigError(key, "unknown section");
  }

  RunConfig c;
  {
    Section s(root, "task");
    const std::string name = s.string("name", default_task ? to_string(*default_task) : "");
    s.finish();
    if (name.empty()) throw ConfigError("task.name", "missing");
    const auto t = parse_task(name);
    if (!t) throw ConfigError("task.name", "unknown task '" + name + "'");
    c.task = *t;
  }

  Section model(root, "model");
  Section raw(root, "raw");
  if (model.present() && raw.present()) throw ConfigError("model", "[model] and [raw] are mutually exclusive");
  if (model.present()) c.model = read_model(model);
  if (raw.present()) c.raw = read_raw(raw);
  if (!model.present() && !raw.present() && c.task != Task::Figure) {
    throw ConfigError("model", "one of [model] or [raw] is required");
  }

  {
    Section s(root, "numerics");
    NumericsConfig& n = c.numerics;
    n.n_max = s.integer("n_max", n.n_max);
    n.tau_max = s.number("tau_max", n.tau_max);
    n.tau_points = s.integer("tau_points", n.tau_points);
    const std::string method = s.string("propagation", method_name(n.propagation.method));
    if (method == "pade") {
      n.propagation.method = PropagationMethod::Pade;
    } else if (method == "runge_kutta") {
      n.propagation.method = PropagationMethod::RungeKutta;
    } else {
      throw ConfigError("numerics.propagation", "expected \"pade\" or \"runge_kutta\"");
    }
    n.propagation.max_step = s.number("max_step", n.propagation.max_step);
    n.propagation.pade_order = s.integer("pade_order", n.propagation.pade_order);
    n.propagation.rel_tol = s.number("rel_tol", n.propagation.rel_tol);
    n.propagation.abs_tol = s.number("abs_tol", n.propagation.abs_tol);
    n.classify.guard_band = s.number("guard_band", n.classify.guard_band);
    n.classify.tau_window = s.number("tau_window", n.classify.tau_window);
    s.finish();
    if (n.n_max < 2) throw ConfigError("numerics.n_max", "must be >= 2");
    if (!(n.tau_max > 0.0)) throw ConfigError("numerics.tau_max", "must be > 0");
    if (n.tau_points < 2) throw ConfigError("numerics.tau_points", "must be >= 2");
    if (!(n.propagation.max_step > 0.0)) throw ConfigError("numerics.max_step", "must be > 0");
    if (n.propagation.pade_order < 1 || n.propagation.pade_order > 12) {
      throw ConfigError("numerics.pade_order", "must be within 1..12");
    }
    if (!(n.propagation.rel_tol > 0.0)) throw ConfigError("numerics.rel_tol", "must be > 0");
    if (!(n.propagation.abs_tol > 0.0)) throw ConfigError("numerics.abs_tol", "must be > 0");
    if (n.classify.guard_band < 0.0) throw ConfigError("numerics.guard_band", "must be >= 0");
    if (!(n.classify.tau_window > 0.0)) throw ConfigError("numerics.tau_window", "must be > 0");
  }

  {
    Section s(root, "refine");
    if (s.present()) {
      ResonanceTarget t;
      t.n = s.integer("n", t.n);
      const std::string branch = s.string("branch", branch_name(t.branch));
      if (branch == "upper") {
        t.branch = Branch::Upper;
      } else if (branch == "lower") {
        t.branch = Branch::Lower;
      } else {
        throw ConfigError("refine.branch", "expected \"upper\" or \"lower\"");
      }
      t.window = s.number("window", t.window);
      const std::string extremum = s.string("extremum", extremum_name(t.extremum));
      if (extremum == "min_g2") {
        t.extremum = ExtremumKind::MinimizeG2;
      } else if (extremum == "max_n_s") {
        t.extremum = ExtremumKind::MaximizePhotonNumber;
      } else {
        throw ConfigError("refine.extremum", "expected \"min_g2\" or \"max_n_s\"");
      }
      t.points = s.integer("points", t.points);
      s.finish();
      if (t.n < 1) throw ConfigError("refine.n", "must be >= 1");
      if (t.window < 0.0) throw ConfigError("refine.window", "must be >= 0 (0 selects 0.2 g)");
      if (t.points < 3) throw ConfigError("refine.points", "must be >= 3");
      c.refine = t;
    }
  }

  {
    Section s(root, "spectrum");
    SpectrumConfig& sp = c.spectrum;
    sp.chi_min = s.number("chi_min", sp.chi_min);
    sp.chi_max = s.number("chi_max", sp.chi_max);
    sp.chi_points = s.integer("chi_points", sp.chi_points);
    sp.manifolds = s.integers("manifolds", sp.manifolds);
    s.finish();
    if (sp.chi_points < 1) throw ConfigError("spectrum.chi_points", "must be >= 1");
    if (sp.chi_max < sp.chi_min) throw ConfigError("spectrum.chi_max", "must be >= chi_min");
    if (sp.manifolds.empty()) throw ConfigError("spectrum.manifolds", "must not be empty");
    for (int n : sp.manifolds) {
      if (n < 2) throw ConfigError("spectrum.manifolds", "manifold indices must be >= 2");
    }
  }

  {
    Section s(root, "correlate");
    c.correlate.group_sizes = s.integers("group_sizes", c.correlate.group_sizes);
    s.finish();
    if (c.correlate.group_sizes.empty()) throw ConfigError("correlate.group_sizes", "must not be empty");
    for (int n : c.correlate.group_sizes) {
      if (n < 1) throw ConfigError("correlate.group_sizes", "group sizes must be >= 1");
    }
  }

  {
    Section s(root, "sweep");
    c.sweep.axis1 = read_axis(s, "axis1");
    c.sweep.axis2 = read_axis(s, "axis2");
    c.sweep.tie_delta_a = s.boolean("tie_delta_a", c.sweep.tie_delta_a);
    c.sweep.tau_series = s.boolean("tau_series", c.sweep.tau_series);
    s.finish();
    if (c.task == Task::Sweep) {
      if (!c.sweep.axis1) throw ConfigError("sweep.axis1", "grid is empty");
      if (c.sweep.axis2 && c.sweep.axis2->parameter == c.sweep.axis1->parameter) {
        throw ConfigError("sweep.axis2", "duplicates axis1 parameter");
      }
      if (c.refine && (c.sweep.axis1->parameter == "delta_c" ||
                       (c.sweep.axis2 && c.sweep.axis2->parameter == "delta_c"))) {
        throw ConfigError("refine", "a refined sweep chooses delta_c itself; it cannot also scan delta_c");
      }
    }
  }

  {
    Section s(root, "figure");
    FigureConfig& f = c.figure;
    f.id = s.string("id", f.id);
    f.points_1d = s.integer("points_1d", f.points_1d);
    f.contour_x_points = s.integer("contour_x_points", f.contour_x_points);
    f.contour_y_points = s.integer("contour_y_points", f.contour_y_points);
    f.refine_points = s.integer("refine_points", f.refine_points);
    s.finish();
    if (c.task == Task::Figure) {
      if (std::find(std::begin(kFigureIds), std::end(kFigureIds), f.id) == std::end(kFigureIds)) {
        throw ConfigError("figure.id", "expected one of fig2..fig8, got '" + f.id + "'");
      }
    }
    if (f.points_1d < 2) throw ConfigError("figure.points_1d", "must be >= 2");
    if (f.contour_x_points < 2) throw ConfigError("figure.contour_x_points", "must be >= 2");
    if (f.contour_y_points < 2) throw ConfigError("figure.contour_y_points", "must be >= 2");
    if (f.refine_points < 3) throw ConfigError("figure.refine_points", "must be >= 3");
  }

  {
    Section s(root, "units");
    c.units.kappa_hz = s.optional_number("kappa_hz");
    s.finish();
    if (c.units.kappa_hz && !(*c.units.kappa_hz > 0.0)) throw ConfigError("units.kappa_hz", "must be > 0");
  }
  return c;
}

json axis_to_json(const AxisConfig& a, const std::string& prefix, json& out) {
  out[prefix] = a.parameter;
  if (a.min && a.max) {
    out[prefix + "_min"] = *a.min;
    out[prefix + "_max"] = *a.max;
    out[prefix + "_points"] = a.points;
  } else {
    out[prefix + "_values"] = a.values;
  }
  return out;
}

}  // namespace

const char* to_string(Task t) noexcept {
  switch (t) {
    case Task::Spectrum: return "spectrum";
    case Task::Steady: return "steady";
    case Task::Correlate: return "correlate";
    case Task::Sweep: return "sweep";
    case Task::Classify: return "classify";
    case Task::Figure: return "figure";
  }
  return "steady";
}

std::optional<Task> parse_task(std::string_view name) {
  for (Task t : {Task::Spectrum, Task::Steady, Task::Correlate, Task::Sweep, Task::Classify, Task::Figure}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

Axis AxisConfig::resolve(const std::string& key) const {
  const auto which = parse_sweep_parameter(parameter);
  if (!which) throw ConfigError(key, "unknown parameter '" + parameter + "' (delta_c, eta, omega, chi)");
  Axis axis;
  axis.parameter = *which;
  if (min && max) {
    if (!values.empty()) throw ConfigError(key, "give either _values or _min/_max/_points, not both");
    if (points < 1) throw ConfigError(key + "_points", "must be >= 1");
    axis.values = linspace(*min, *max, points);
  } else {
    axis.values = values;
  }
  if (axis.values.empty()) throw ConfigError(key, "grid is empty");
  for (double v : axis.values) {
    if (!std::isfinite(v)) throw ConfigError(key, "grid contains a non-finite value");
  }
  for (std::size_t i = 1; i < axis.values.size(); ++i) {
    const double step = axis.values[i] - axis.values[i - 1];
    if (step == 0.0 || step * (axis.values[1] - axis.values[0]) < 0.0) {
      throw ConfigError(key, "grid must be strictly monotone");
    }
  }
  return axis;
}

ModelParams RunConfig::effective_model() const {
  if (model) return *model;
  if (raw) return derive_effective_params(*raw);
  ModelParams p;
  p.g = 4.0;
  p.gamma = 0.1;
  return p;
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> out;
  auto drive = [&](const char* name, double value) {
    if (std::abs(value) > 1.5) {
      std::ostringstream os;
      os << name << " = " << value << " kappa exceeds 1.5 kappa, beyond the experimentally accessible range";
      out.push_back(os.str());
    }
  };
  const ModelParams p = effective_model();
  drive("eta", p.eta);
  drive("omega", p.omega);
  if (task == Task::Sweep) {
    for (const auto* axis : {sweep.axis1 ? &*sweep.axis1 : nullptr, sweep.axis2 ? &*sweep.axis2 : nullptr}) {
      if (!axis || (axis->parameter != "eta" && axis->parameter != "omega")) continue;
      const Axis a = axis->resolve("sweep");
      const double peak = std::max(std::abs(a.values.front()), std::abs(a.values.back()));
      drive(axis->parameter.c_str(), peak);
    }
  }
  if (raw) {
    for (std::string& w : adiabaticity_warnings(*raw)) out.push_back(std::move(w));
  }
  return out;
}

RunConfig parse_config_text(std::string_view text, std::optional<Task> default_task) {
  return tree_to_config(text_to_tree(text), default_task);
}

RunConfig parse_config_json(std::string_view text, std::optional<Task> default_task) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (root.is_object() && root.contains("config") && root.at("config").is_object()) {
    return tree_to_config(root.at("config"), default_task);
  }
  return tree_to_config(root, default_task);
}

RunConfig load_config(const std::filesystem::path& path, std::optional<Task> default_task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_config_json(text, default_task);
  return parse_config_text(text, default_task);
}

std::string config_to_json(const RunConfig& c, int indent) {
  json root;
  root["task"] = {{"name", to_string(c.task)}};
  if (c.model) {
    const ModelParams& p = *c.model;
    root["model"] = {{"delta_c", p.delta_c}, {"delta_a", p.delta_a}, {"chi", p.chi},     {"g", p.g},
                     {"eta", p.eta},         {"omega", p.omega},     {"kappa", p.kappa}, {"gamma", p.gamma}};
  }
  if (c.raw) {
    const RawParams& r = *c.raw;
    root["raw"] = {{"g0", r.g0},           {"delta_1", r.delta_1}, {"omega_1", r.omega_1},
                   {"omega_2", r.omega_2}, {"delta_2", r.delta_2}, {"delta_m", r.delta_m},
                   {"delta_c_prime", r.delta_c_prime},             {"chi", r.chi},
                   {"eta", r.eta},         {"kappa", r.kappa},     {"gamma", r.gamma}};
  }
  const NumericsConfig& n = c.numerics;
  root["numerics"] = {{"n_max", n.n_max},
                      {"tau_max", n.tau_max},
                      {"tau_points", n.tau_points},
                      {"propagation", method_name(n.propagation.method)},
                      {"max_step", n.propagation.max_step},
                      {"pade_order", n.propagation.pade_order},
                      {"rel_tol", n.propagation.rel_tol},
                      {"abs_tol", n.propagation.abs_tol},
                      {"guard_band", n.classify.guard_band},
                      {"tau_window", n.classify.tau_window}};
  if (c.refine) {
    root["refine"] = {{"n", c.refine->n},
                      {"branch", branch_name(c.refine->branch)},
                      {"window", c.refine->window},
                      {"extremum", extremum_name(c.refine->extremum)},
                      {"points", c.refine->points}};
  }
  switch (c.task) {
    case Task::Spectrum:
      root["spectrum"] = {{"chi_min", c.spectrum.chi_min},
                          {"chi_max", c.spectrum.chi_max},
                          {"chi_points", c.spectrum.chi_points},
                          {"manifolds", c.spectrum.manifolds}};
      break;
    case Task::Correlate:
      root["correlate"] = {{"group_sizes", c.correlate.group_sizes}};
      break;
    case Task::Sweep: {
      json s = json::object();
      if (c.sweep.axis1) axis_to_json(*c.sweep.axis1, "axis1", s);
      if (c.sweep.axis2) axis_to_json(*c.sweep.axis2, "axis2", s);
      s["tie_delta_a"] = c.sweep.tie_delta_a;
      s["tau_series"] = c.sweep.tau_series;
      root["sweep"] = s;
      break;
    }
    case Task::Figure:
      root["figure"] = {{"id", c.figure.id},
                        {"points_1d", c.figure.points_1d},
                        {"contour_x_points", c.figure.contour_x_points},
                        {"contour_y_points", c.figure.contour_y_points},
                        {"refine_points", c.figure.refine_points}};
      break;
    case Task::Steady:
    case Task::Classify:
      break;
  }
  if (c.units.kappa_hz) root["units"] = {{"kappa_hz", *c.units.kappa_hz}};
  return root.dump(indent);
}

}  // namespace kerr2jc
