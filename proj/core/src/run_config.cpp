#include "semiclassic/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "semiclassic/error.hpp"

namespace semiclassic {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw Error(ErrorKind::Config, where + ": " + message);
}

// Typed access to one section with field-level diagnostics.
class SectionReader {
 public:
  SectionReader(const ConfigDocument& doc, std::string section)
      : doc_(doc), section_(std::move(section)) {
    auto it = doc.sections().find(section_);
    if (it != doc.sections().end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  bool has(const std::string& key) const { return entries_ && entries_->count(key) > 0; }

  std::string where(const std::string& key) const {
    std::ostringstream os;
    const int line = has(key) ? entries_->at(key).line : 0;
    if (line > 0) {
      os << doc_.source() << ":" << line;
    } else {
      os << "--set";
    }
    os << ": [" << section_ << "] " << key;
    return os.str();
  }

  const std::string& text(const std::string& key) const {
    if (!has(key)) fail(doc_.source() + ": [" + section_ + "] " + key, "required value missing");
    return entries_->at(key).value;
  }

  double number(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(where(key), "expected a finite number, got '" + s + "'");
    }
    return v;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const std::string& s = text(key);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(where(key), "expected an integer, got '" + s + "'");
    }
    return v;
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        fail(where(key), "expected a comma-separated list of numbers, bad item '" + t + "'");
      }
      out.push_back(v);
    }
    return out;
  }

  void allow_only(const std::set<std::string>& keys) const {
    if (!entries_) return;
    for (const auto& [key, entry] : *entries_) {
      if (!keys.count(key)) fail(where(key), "unknown key");
    }
  }

  // Re-throw model validation errors with this section's location.
  template <class F>
  auto guarded(const std::string& key, F f) const {
    try {
      return f();
    } catch (const Error& e) {
      fail(where(key), e.what());
    }
  }

 private:
  const ConfigDocument& doc_;
  std::string section_;
  const std::map<std::string, ConfigDocument::Entry>* entries_ = nullptr;
};

PotentialModel read_potential(const SectionReader& s) {
  const std::string type = s.text("type");
  auto model = [&](auto form, std::set<std::string> keys) {
    keys.insert("type");
    s.allow_only(keys);
    return s.guarded("type", [&] { return PotentialModel(form); });
  };
  if (type == "square") {
    SquareBarrier f;
    f.height = s.number_or("height", f.height);
    f.width = s.number_or("width", f.width);
    f.center = s.number_or("center", f.center);
    return model(f, {"height", "width", "center"});
  }
  if (type == "gaussian") {
    GaussianBump f;
    f.amplitude = s.number_or("amplitude", f.amplitude);
    f.width = s.number_or("width", f.width);
    f.center = s.number_or("center", f.center);
    return model(f, {"amplitude", "width", "center"});
  }
  if (type == "eckart") {
    EckartBarrier f;
    f.height = s.number_or("height", f.height);
    f.width = s.number_or("width", f.width);
    f.center = s.number_or("center", f.center);
    return model(f, {"height", "width", "center"});
  }
  if (type == "parabolic") {
    ParabolicBarrier f;
    f.height = s.number_or("height", f.height);
    f.curvature = s.number_or("curvature", f.curvature);
    f.center = s.number_or("center", f.center);
    return model(f, {"height", "curvature", "center"});
  }
  if (type == "harmonic") {
    HarmonicWell f;
    f.stiffness = s.number_or("stiffness", f.stiffness);
    return model(f, {"stiffness"});
  }
  if (type == "linear") {
    LinearRamp f;
    f.offset = s.number_or("offset", f.offset);
    f.slope = s.number_or("slope", f.slope);
    return model(f, {"offset", "slope"});
  }
  if (type == "tabulated") {
    s.allow_only({"type", "xs", "vs"});
    auto xs = s.list("xs");
    auto vs = s.list("vs");
    return s.guarded("xs", [&] {
      return PotentialModel(TabulatedPotential(std::move(xs), std::move(vs)));
    });
  }
  fail(s.where("type"), "unknown potential type '" + type +
                            "' (square, gaussian, eckart, parabolic, harmonic, linear, tabulated)");
}

}  // namespace

std::string_view method_label(Method method) {
  switch (method) {
    case Method::Wkb: return "wkb";
    case Method::WkbCorrected: return "wkb-corrected";
    case Method::Connection: return "connection";
    case Method::Born1: return "born1";
    case Method::OnceReflected: return "once-reflected";
    case Method::Exact: return "exact";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Wkb, Method::WkbCorrected, Method::Connection, Method::Born1,
                   Method::OnceReflected, Method::Exact}) {
    if (method_label(m) == name) return m;
  }
  throw Error(ErrorKind::Config,
              "unknown method '" + std::string(name) +
                  "' (wkb, wkb-corrected, connection, born1, once-reflected, exact)");
}

bool is_reflection_method(Method method) {
  return method == Method::Born1 || method == Method::OnceReflected;
}

double ScanSpec::energy(int i) const {
  if (i == steps - 1) return e_max;
  return e_min + (e_max - e_min) * i / (steps - 1);
}

void RunConfig::validate() const {
  problem.context.validate();
  if (!std::isfinite(problem.domain.lo) || !std::isfinite(problem.domain.hi) ||
      !(problem.domain.lo < problem.domain.hi)) {
    throw Error(ErrorKind::Config, "[problem] x_min must be less than x_max");
  }
  if (scan) {
    if (scan->steps < 2) throw Error(ErrorKind::Config, "[scan] steps must be >= 2");
    if (!(scan->e_min < scan->e_max)) {
      throw Error(ErrorKind::Config, "[scan] e_min must be less than e_max");
    }
  }
  if (n_max < 0) throw Error(ErrorKind::Config, "n_max must be non-negative");
  if (samples < 2) throw Error(ErrorKind::Config, "samples must be >= 2");
  oracle.validate();
}

ConfigDocument ConfigDocument::parse(std::string_view text, std::string source) {
  ConfigDocument doc;
  doc.source_ = std::move(source);
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string line = trim(raw);
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = doc.source_ + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') fail(where, "unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(where, "empty section name");
      doc.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value', got '" + line + "'");
    if (section.empty()) fail(where, "key outside of any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "empty key");
    if (value.empty()) fail(where, "empty value for '" + key + "'");
    auto& entries = doc.sections_[section];
    if (entries.count(key)) {
      fail(where, "duplicate key '" + key + "' in [" + section + "] (first on line " +
                      std::to_string(entries[key].line) + ")");
    }
    entries[key] = Entry{value, line_no};
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void ConfigDocument::set(const std::string& section, const std::string& key,
                         const std::string& value) {
  sections_[section][key] = Entry{value, 0};
}

void ConfigDocument::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq) {
    throw Error(ErrorKind::Config, "--set expects section.key=value, got '" +
                                       std::string(assignment) + "'");
  }
  const std::string section = trim(assignment.substr(0, dot));
  const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  const std::string value = trim(assignment.substr(eq + 1));
  if (section.empty() || key.empty() || value.empty()) {
    throw Error(ErrorKind::Config, "--set expects section.key=value, got '" +
                                       std::string(assignment) + "'");
  }
  set(section, key, value);
}

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

RunConfig build_run_config(const ConfigDocument& doc) {
  static const std::set<std::string> known = {"context", "potential", "problem", "method",
                                              "scan",    "output",    "oracle",  "bound_states",
                                              "wavefunction"};
  for (const auto& [name, entries] : doc.sections()) {
    if (!known.count(name)) {
      const int line = entries.empty() ? 0 : entries.begin()->second.line;
      fail(doc.source() + (line > 0 ? ":" + std::to_string(line) : std::string()),
           "unknown section [" + name + "]");
    }
  }

  RunConfig cfg;
  const SectionReader context(doc, "context");
  context.allow_only({"mass", "hbar"});
  cfg.problem.context.mass = context.number_or("mass", 1.0);
  cfg.problem.context.hbar = context.number_or("hbar", 1.0);
  context.guarded("mass", [&] { cfg.problem.context.validate(); });

  const SectionReader potential(doc, "potential");
  if (!potential.present()) fail(doc.source(), "missing [potential] section");
  cfg.problem.potential = read_potential(potential);

  const SectionReader problem(doc, "problem");
  problem.allow_only({"energy", "x_min", "x_max"});
  cfg.problem.domain.lo = problem.number("x_min");
  cfg.problem.domain.hi = problem.number("x_max");
  if (!(cfg.problem.domain.lo < cfg.problem.domain.hi)) {
    fail(problem.where("x_max"), "x_max must exceed x_min");
  }
  if (problem.has("energy")) {
    cfg.problem.energy = problem.number("energy");
    cfg.energy_set = true;
  }
  if (const auto* tab = std::get_if<TabulatedPotential>(&cfg.problem.potential.form())) {
    if (cfg.problem.domain.lo < tab->x_min() || cfg.problem.domain.hi > tab->x_max()) {
      fail(problem.where("x_min"), "domain extends beyond the tabulated grid");
    }
  }

  const SectionReader method(doc, "method");
  method.allow_only({"name", "x0"});
  if (method.has("name")) {
    cfg.method = method.guarded("name", [&] { return parse_method(method.text("name")); });
  }
  if (method.has("x0")) cfg.x0 = method.number("x0");

  const SectionReader scan(doc, "scan");
  scan.allow_only({"e_min", "e_max", "steps"});
  if (scan.present()) {
    ScanSpec spec;
    spec.e_min = scan.number("e_min");
    spec.e_max = scan.number("e_max");
    spec.steps = scan.integer("steps");
    if (spec.steps < 2) fail(scan.where("steps"), "must be >= 2");
    if (!(spec.e_min < spec.e_max)) fail(scan.where("e_max"), "e_max must exceed e_min");
    cfg.scan = spec;
  }

  const SectionReader output(doc, "output");
  output.allow_only({"path", "format"});
  if (output.has("path")) cfg.output.path = output.text("path");
  if (output.has("format")) {
    const std::string& f = output.text("format");
    if (f == "csv") {
      cfg.output.format = OutputFormat::Csv;
    } else if (f == "structured-text") {
      cfg.output.format = OutputFormat::StructuredText;
    } else {
      fail(output.where("format"), "expected csv or structured-text, got '" + f + "'");
    }
  }

  const SectionReader oracle(doc, "oracle");
  oracle.allow_only({"grid_points", "match_margin", "v_eps"});
  if (oracle.has("grid_points")) cfg.oracle.grid_points = oracle.integer("grid_points");
  cfg.oracle.match_margin = oracle.number_or("match_margin", cfg.oracle.match_margin);
  cfg.oracle.v_eps = oracle.number_or("v_eps", cfg.oracle.v_eps);
  oracle.guarded("grid_points", [&] { cfg.oracle.validate(); });

  const SectionReader bound(doc, "bound_states");
  bound.allow_only({"n_max"});
  if (bound.has("n_max")) {
    cfg.n_max = bound.integer("n_max");
    if (cfg.n_max < 0) fail(bound.where("n_max"), "must be non-negative");
  }

  const SectionReader wave(doc, "wavefunction");
  wave.allow_only({"samples"});
  if (wave.has("samples")) {
    cfg.samples = wave.integer("samples");
    if (cfg.samples < 2) fail(wave.where("samples"), "must be >= 2");
  }

  cfg.validate();
  return cfg;
}

}  // namespace semiclassic
