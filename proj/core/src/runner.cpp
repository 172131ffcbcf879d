#include "semiclassic/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "semiclassic/connection.hpp"
#include "semiclassic/csv.hpp"
#include "semiclassic/error.hpp"
#include "semiclassic/oracle.hpp"
#include "semiclassic/reflection.hpp"
#include "semiclassic/special_fn.hpp"
#include "semiclassic/wkb.hpp"

namespace semiclassic {

namespace {

std::string cell_text(const Table::Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

double sigma_or_zero(const ScatteringProblem& problem) {
  try {
    return barrier_integral(problem);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoBarrier) return 0.0;
    throw;
  }
}

Table::Cell text(std::string_view s) { return std::string(s); }

}  // namespace

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::string render_table(const Table& table, OutputFormat format) {
  std::ostringstream os;
  write_table(os, table, format);
  return os.str();
}

int scan_threads() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SEMICLASSIC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, hw));
  }
  return hw;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(threads, 1, count);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Table evaluate_energies(const RunConfig& config, const std::vector<double>& energies) {
  Table table;
  const bool reflection = is_reflection_method(config.method);
  table.columns = reflection
                      ? std::vector<std::string>{"E", "re_R", "im_R", "R_squared", "method"}
                      : std::vector<std::string>{"E", "T", "R", "sigma_star", "method"};
  table.rows.resize(energies.size());
  const auto label = method_label(config.method);

  parallel_for(static_cast<int>(energies.size()), scan_threads(), [&](int i) {
    ScatteringProblem problem = config.problem;
    problem.energy = energies[i];
    problem.validate();
    if (reflection) {
      const std::complex<double> r = config.method == Method::Born1
                                         ? born_first_order(problem)
                                         : once_reflected_coefficient(problem, config.x0);
      table.rows[i] = {energies[i], r.real(), r.imag(), std::norm(r), text(label)};
      return;
    }
    TransmissionReport report;
    switch (config.method) {
      case Method::Wkb:
        report = transmission_leading(problem, TransmissionMethod::WkbLeading);
        break;
      case Method::WkbCorrected:
        report = transmission_leading(problem, TransmissionMethod::WkbCorrected);
        break;
      case Method::Connection:
        report = transmission_from_currents(problem);
        break;
      case Method::Exact:
        report = solve_scattering_exact(problem, config.oracle);
        report.sigma_star = sigma_or_zero(problem);
        break;
      default:
        break;
    }
    table.rows[i] = {energies[i], report.transmission, report.reflection, report.sigma_star,
                     text(label)};
  });
  return table;
}

Table run_transmission(const RunConfig& config) {
  if (!config.energy_set) throw Error(ErrorKind::Config, "[problem] energy: required value missing");
  return evaluate_energies(config, {config.problem.energy});
}

Table run_scan(const RunConfig& config) {
  if (!config.scan) throw Error(ErrorKind::Config, "missing [scan] section (e_min, e_max, steps)");
  std::vector<double> energies(config.scan->steps);
  for (int i = 0; i < config.scan->steps; ++i) energies[i] = config.scan->energy(i);
  return evaluate_energies(config, energies);
}

std::vector<double> wkb_levels(const ScatteringProblem& problem, int n_max) {
  problem.validate();
  if (n_max < 0) throw Error(ErrorKind::Domain, "n_max must be non-negative");
  const int samples = 4096;
  double vmin = problem.V(problem.domain.lo);
  for (int i = 0; i <= samples; ++i) {
    vmin = std::min(vmin, problem.V(problem.domain.lo + problem.domain.width() * i / samples));
  }
  const double ceiling = std::min(problem.V(problem.domain.lo), problem.V(problem.domain.hi));
  if (!(ceiling > vmin)) {
    throw Error(ErrorKind::Spectrum, "potential is not confining on the domain");
  }

  // Action int_a^b p dx on an energy grid; it increases with E.
  const int grid = 400;
  std::vector<double> es, actions;
  ScatteringProblem trial = problem;
  for (int i = 1; i < grid; ++i) {
    trial.energy = vmin + (ceiling - vmin) * i / grid;
    try {
      es.push_back(trial.energy);
      actions.push_back(quantization_residual(trial, 0) + 0.5 * std::numbers::pi * problem.context.hbar);
    } catch (const Error&) {
      es.pop_back();
    }
  }
  std::vector<double> levels;
  for (int n = 0; n <= n_max; ++n) {
    const double target = (n + 0.5) * std::numbers::pi * problem.context.hbar;
    std::size_t j = 0;
    while (j < actions.size() && actions[j] < target) ++j;
    if (j == actions.size()) {
      std::ostringstream os;
      os << "quantization: level " << n << " lies above the edge potential " << ceiling;
      throw Error(ErrorKind::Spectrum, os.str());
    }
    const double lo = j == 0 ? vmin + 1e-9 * (ceiling - vmin) : es[j - 1];
    levels.push_back(quantize(problem, n, Interval{lo, es[j]}));
  }
  return levels;
}

Table run_bound_states(const RunConfig& config) {
  std::vector<double> levels;
  switch (config.method) {
    case Method::Exact:
      levels = solve_bound_states_exact(config.problem, config.n_max, config.oracle);
      break;
    case Method::Wkb:
    case Method::WkbCorrected:
      levels = wkb_levels(config.problem, config.n_max);
      break;
    default:
      throw Error(ErrorKind::Regime, "bound-states supports methods exact and wkb; '" +
                                         std::string(method_label(config.method)) +
                                         "' is a scattering method");
  }
  Table table;
  table.columns = {"n", "E", "method"};
  const std::string label = config.method == Method::Exact ? "exact" : "wkb";
  for (std::size_t n = 0; n < levels.size(); ++n) {
    table.rows.push_back({static_cast<long long>(n), levels[n], label});
  }
  return table;
}

Table run_wavefunction(const RunConfig& config) {
  if (!config.energy_set) throw Error(ErrorKind::Config, "[problem] energy: required value missing");
  WavefunctionTable wf;
  switch (config.method) {
    case Method::Exact:
      wf = wavefunction_exact(config.problem, config.oracle);
      break;
    case Method::Connection:
    case Method::Wkb:
    case Method::WkbCorrected:
      wf = patched_barrier_solution(config.problem, {1.0, 0.0}, config.samples);
      break;
    default:
      throw Error(ErrorKind::Regime, "wavefunction supports methods exact and connection; '" +
                                         std::string(method_label(config.method)) +
                                         "' gives amplitudes only");
  }
  Table table;
  table.columns = {"x", "re_psi", "im_psi", "region"};
  table.rows.reserve(wf.size());
  for (std::size_t i = 0; i < wf.size(); ++i) {
    table.rows.push_back(
        {wf.xs[i], wf.psi[i].real(), wf.psi[i].imag(), text(region_name(wf.region_tags[i]))});
  }
  return table;
}

Table run_airy(const std::vector<double>& zs) {
  Table table;
  table.columns = {"z", "ai", "bi", "ai_prime", "bi_prime"};
  for (double z : zs) {
    const AiryPair a = airy_auto(z);
    table.rows.push_back({z, a.ai, a.bi, a.ai_prime, a.bi_prime});
  }
  return table;
}

}  // namespace semiclassic
