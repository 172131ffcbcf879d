#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "semiclassic/oracle.hpp"
#include "semiclassic/potential.hpp"

namespace semiclassic {

enum class Method { Wkb, WkbCorrected, Connection, Born1, OnceReflected, Exact };

std::string_view method_label(Method method);
/// Error{Config} for an unknown name.
Method parse_method(std::string_view name);
/// True for born1 and once-reflected, which report a complex amplitude.
bool is_reflection_method(Method method);

struct ScanSpec {
  double e_min = 0.0;
  double e_max = 0.0;
  int steps = 2;

  double energy(int i) const;
};

enum class OutputFormat { Csv, StructuredText };

struct OutputSpec {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  ScatteringProblem problem{PhysicalContext{}, PotentialModel(EckartBarrier{}), 0.5,
                            Interval{-20.0, 20.0}};
  bool energy_set = false;
  Method method = Method::WkbCorrected;
  std::optional<double> x0;  // phase reference for once-reflected
  std::optional<ScanSpec> scan;
  OutputSpec output;
  OracleConfig oracle;
  int n_max = 3;
  int samples = 801;

  /// Error{Config} when scan or sampling settings are inconsistent.
  void validate() const;
};

/// Parsed `key = value` entries keyed by section, each remembering its
/// source line for diagnostics.
class ConfigDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  /// Error{Config} with `source:line:` diagnostics on malformed text.
  static ConfigDocument parse(std::string_view text, std::string source = "<config>");
  static ConfigDocument load(const std::string& path);

  /// Override or add `section.key`; line 0 marks a command-line value.
  void set(const std::string& section, const std::string& key, const std::string& value);
  /// `section.key=value` form used by --set.
  void set_assignment(std::string_view assignment);

  bool has(const std::string& section, const std::string& key) const;
  const std::string& source() const { return source_; }
  const std::map<std::string, std::map<std::string, Entry>>& sections() const {
    return sections_;
  }

 private:
  std::string source_ = "<config>";
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Build and validate a RunConfig. Unknown sections or keys, missing
/// required values and malformed numbers raise Error{Config} naming the
/// field and its line.
RunConfig build_run_config(const ConfigDocument& doc);

}  // namespace semiclassic
