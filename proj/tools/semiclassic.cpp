// semiclassic: command-line front end for the barrier-scattering toolkit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semiclassic/csv.hpp"
#include "semiclassic/error.hpp"
#include "semiclassic/run_config.hpp"
#include "semiclassic/runner.hpp"
#include "semiclassic/verify.hpp"

namespace sc = semiclassic;

namespace {

struct ProblemFlags {
  std::string config;
  std::vector<std::string> sets;
  std::string method;
  std::string output;
  std::string format;
  std::optional<double> energy;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f, bool with_energy) {
  cmd->add_option("-c,--config", f.config, "Problem config file")->required();
  cmd->add_option("--set", f.sets, "Override a config value: section.key=value");
  cmd->add_option("-m,--method", f.method,
                  "wkb | wkb-corrected | connection | born1 | once-reflected | exact");
  cmd->add_option("-o,--output", f.output, "Output path (default: standard output)");
  cmd->add_option("--format", f.format, "csv | structured-text");
  if (with_energy) cmd->add_option("-E,--energy", f.energy, "Energy (overrides [problem] energy)");
}

sc::ConfigDocument load_document(const ProblemFlags& f) {
  auto doc = sc::ConfigDocument::load(f.config);
  for (const auto& s : f.sets) doc.set_assignment(s);
  if (!f.method.empty()) doc.set("method", "name", f.method);
  if (!f.output.empty()) doc.set("output", "path", f.output);
  if (!f.format.empty()) doc.set("output", "format", f.format);
  if (f.energy) doc.set("problem", "energy", sc::format_number(*f.energy));
  return doc;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw sc::Error(sc::ErrorKind::Config, "cannot write output file '" + path + "'");
  out << text;
  if (!out) throw sc::Error(sc::ErrorKind::Numerical, "write to '" + path + "' failed");
}

void emit_table(const sc::Table& table, const sc::RunConfig& config) {
  emit(sc::render_table(table, config.output.format), config.output.path);
}

int report(const sc::Error& e) {
  std::cerr << "error[" << sc::kind_name(e.kind()) << "]: " << e.what() << '\n';
  return sc::exit_code(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional barrier scattering: WKB, connection formulas, reflection series "
               "and an exact Numerov oracle"};
  app.require_subcommand(1);

  ProblemFlags transmission_flags;
  auto* transmission = app.add_subcommand("transmission", "T and R at a single energy");
  add_problem_flags(transmission, transmission_flags, true);

  ProblemFlags scan_flags;
  std::optional<double> e_min, e_max;
  std::optional<int> steps;
  auto* scan = app.add_subcommand("scan", "T and R (or reflection amplitudes) over an energy grid");
  add_problem_flags(scan, scan_flags, false);
  scan->add_option("--e-min", e_min, "First energy (overrides [scan] e_min)");
  scan->add_option("--e-max", e_max, "Last energy (overrides [scan] e_max)");
  scan->add_option("--steps", steps, "Number of energies (overrides [scan] steps)");

  ProblemFlags bound_flags;
  std::optional<int> n_max;
  auto* bound = app.add_subcommand("bound-states", "Levels of a confining well");
  add_problem_flags(bound, bound_flags, false);
  bound->add_option("-n,--n-max", n_max, "Highest level index (overrides [bound_states] n_max)");

  ProblemFlags wave_flags;
  std::optional<int> samples;
  auto* wave = app.add_subcommand("wavefunction", "Sampled wavefunction table");
  add_problem_flags(wave, wave_flags, true);
  wave->add_option("--samples", samples, "Sample count for the patched solution");

  std::vector<double> zs;
  std::string airy_output;
  auto* airy = app.add_subcommand("airy", "Ai, Bi and derivatives");
  airy->add_option("-z,--z", zs, "Argument(s)")->required();
  airy->add_option("-o,--output", airy_output, "Output path (default: standard output)");

  std::string verify_output;
  std::vector<int> criteria;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite and print a pass/fail table");
  verify->add_option("-o,--output", verify_output, "Output path (default: standard output)");
  verify->add_option("--criterion", criteria, "Run only these criteria (1-9)")
      ->check(CLI::Range(1, sc::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[config]: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*transmission) {
      const auto config = sc::build_run_config(load_document(transmission_flags));
      emit_table(sc::run_transmission(config), config);
    } else if (*scan) {
      auto doc = load_document(scan_flags);
      if (e_min) doc.set("scan", "e_min", sc::format_number(*e_min));
      if (e_max) doc.set("scan", "e_max", sc::format_number(*e_max));
      if (steps) doc.set("scan", "steps", std::to_string(*steps));
      const auto config = sc::build_run_config(doc);
      emit_table(sc::run_scan(config), config);
    } else if (*bound) {
      auto doc = load_document(bound_flags);
      if (n_max) doc.set("bound_states", "n_max", std::to_string(*n_max));
      if (!doc.has("method", "name")) doc.set("method", "name", "exact");
      const auto config = sc::build_run_config(doc);
      emit_table(sc::run_bound_states(config), config);
    } else if (*wave) {
      auto doc = load_document(wave_flags);
      if (samples) doc.set("wavefunction", "samples", std::to_string(*samples));
      if (!doc.has("method", "name")) doc.set("method", "name", "exact");
      const auto config = sc::build_run_config(doc);
      emit_table(sc::run_wavefunction(config), config);
    } else if (*airy) {
      emit(sc::render_table(sc::run_airy(zs), sc::OutputFormat::Csv), airy_output);
    } else if (*verify) {
      std::vector<sc::CheckResult> checks;
      if (criteria.empty()) {
        checks = sc::run_verification();
      } else {
        for (int c : criteria) {
          auto part = sc::run_criterion(c);
          checks.insert(checks.end(), part.begin(), part.end());
        }
      }
      std::ostringstream os;
      sc::write_checks(os, checks);
      emit(os.str(), verify_output);
      int failed = 0;
      std::string which;
      for (const auto& c : checks) {
        if (c.pass) continue;
        ++failed;
        which += (which.empty() ? "" : ", ") + std::to_string(c.criterion) + "/" + c.check;
      }
      if (failed > 0) {
        std::cerr << "error[verification]: " << failed << " of " << checks.size()
                  << " checks failed: " << which << '\n';
        return 4;
      }
    }
  } catch (const sc::Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error[numerical]: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
