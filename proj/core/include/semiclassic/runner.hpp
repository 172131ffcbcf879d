#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "semiclassic/run_config.hpp"

namespace semiclassic {

/// Column-ordered result set shared by every subcommand.
struct Table {
  using Cell = std::variant<double, long long, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV (17 significant digits, '\n' line endings) or a JSON document with
/// the same columns.
void write_table(std::ostream& out, const Table& table, OutputFormat format);
std::string render_table(const Table& table, OutputFormat format);

/// Worker count for scans: SEMICLASSIC_THREADS if set and positive, capped
/// by the hardware concurrency.
int scan_threads();

/// Run body(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, the exception from the smallest index is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

/// One row per energy. Transmission methods give E,T,R,sigma_star,method;
/// born1 and once-reflected give E,re_R,im_R,R_squared,method.
Table evaluate_energies(const RunConfig& config, const std::vector<double>& energies);

/// Single energy from [problem] energy.
Table run_transmission(const RunConfig& config);
/// Energies from [scan].
Table run_scan(const RunConfig& config);
/// n,E,method for n = 0..n_max; method exact (shooting) or wkb (quantization).
Table run_bound_states(const RunConfig& config);
/// x,re_psi,im_psi,region; method exact (oracle grid) or connection (patched WKB).
Table run_wavefunction(const RunConfig& config);
/// z,ai,bi,ai_prime,bi_prime
Table run_airy(const std::vector<double>& zs);

/// Levels from the lowest-order quantization condition, bracketed by a
/// scan of the residual between min V and the lower edge value.
std::vector<double> wkb_levels(const ScatteringProblem& problem, int n_max);

}  // namespace semiclassic
