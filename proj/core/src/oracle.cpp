#include "semiclassic/oracle.hpp"

#include <cmath>
#include <sstream>

#include "semiclassic/error.hpp"

namespace semiclassic {

namespace {

using cd = std::complex<double>;

struct Grid {
  std::vector<double> xs;
  std::vector<double> k2;  // 2m(E - V)/hbar^2
  double h = 0.0;
};

Grid make_grid(const ScatteringProblem& problem, const OracleConfig& config) {
  Grid g;
  const int n = config.grid_points;
  g.xs.resize(n);
  g.k2.resize(n);
  g.h = problem.domain.width() / (n - 1);
  const double scale = 2.0 * problem.context.mass / (problem.context.hbar * problem.context.hbar);
  for (int i = 0; i < n; ++i) {
    g.xs[i] = problem.domain.lo + g.h * i;
    if (i == n - 1) g.xs[i] = problem.domain.hi;
    g.k2[i] = scale * (problem.energy - problem.V(g.xs[i]));
  }
  return g;
}

// Lattice wavenumber of a constant-k2 Numerov plane wave:
// cos(q h) = (1 - 5 h^2 k^2 / 12) / (1 + h^2 k^2 / 12).
double lattice_wavenumber(double k2, double h) {
  const double c = (1.0 - 5.0 * h * h * k2 / 12.0) / (1.0 + h * h * k2 / 12.0);
  return std::acos(c) / h;
}

void check_edges(const ScatteringProblem& problem, const OracleConfig& config) {
  const double E = problem.energy;
  const double tol = config.v_eps * std::max(1.0, std::abs(E));
  const double guard = 1e-6 * std::max(1.0, std::abs(E));
  const double margin = std::min(config.match_margin, 0.5 * problem.domain.width());
  for (int side = 0; side < 2; ++side) {
    const double edge = side == 0 ? problem.domain.lo : problem.domain.hi;
    const double v_edge = problem.V(edge);
    if (E - v_edge < guard) {
      std::ostringstream os;
      os << "channel closed at the " << (side == 0 ? "left" : "right") << " edge: E = " << E
         << ", V = " << v_edge;
      throw Error(ErrorKind::ChannelClosed, os.str());
    }
    const int samples = 257;
    for (int i = 0; i < samples; ++i) {
      const double d = margin * i / (samples - 1);
      const double x = side == 0 ? edge + d : edge - d;
      if (std::abs(problem.V(x) - v_edge) > tol) {
        std::ostringstream os;
        os << "potential not flat within " << margin << " of the "
           << (side == 0 ? "left" : "right") << " edge (|V(" << x << ") - V(edge)| = "
           << std::abs(problem.V(x) - v_edge) << " > " << tol << "); widen the domain";
        throw Error(ErrorKind::Matching, os.str());
      }
    }
  }
}

struct Scattering {
  Grid grid;
  std::vector<cd> psi;
  cd incident;
  cd reflected;
  double transmission = 0.0;
  double reflection = 0.0;
};

Scattering integrate_scattering(const ScatteringProblem& problem, const OracleConfig& config) {
  problem.validate();
  config.validate();
  check_edges(problem, config);

  Scattering s;
  s.grid = make_grid(problem, config);
  const auto& g = s.grid;
  const int n = static_cast<int>(g.xs.size());
  const double h = g.h;
  const double c = h * h / 12.0;

  const double qr = lattice_wavenumber(g.k2[n - 1], h);
  const double ql = lattice_wavenumber(g.k2[0], h);
  s.psi.assign(n, cd(0.0, 0.0));
  s.psi[n - 1] = std::polar(1.0, qr * g.xs[n - 1]);
  s.psi[n - 2] = std::polar(1.0, qr * g.xs[n - 2]);
  for (int i = n - 2; i >= 1; --i) {
    const double f_next = 1.0 + c * g.k2[i + 1];
    const double f_prev = 1.0 + c * g.k2[i - 1];
    const double mid = 2.0 * (1.0 - 5.0 * c * g.k2[i]);
    s.psi[i - 1] = (mid * s.psi[i] - f_next * s.psi[i + 1]) / f_prev;
  }

  // psi_j = A e^{i ql x_j} + B e^{-i ql x_j} for j = 0, 1.
  const cd u0 = std::polar(1.0, ql * g.xs[0]);
  const cd u1 = std::polar(1.0, ql * g.xs[1]);
  const cd det = u0 / u1 - u1 / u0;
  s.incident = (s.psi[0] / u1 - s.psi[1] / u0) / det;
  s.reflected = (u0 * s.psi[1] - u1 * s.psi[0]) / det;

  // Conserved lattice flux Im(phi_j* phi_{j+1}), phi = (1 + c k2) psi.
  const double al = 1.0 + c * g.k2[0];
  const double ar = 1.0 + c * g.k2[n - 1];
  const double flux_in = al * al * std::sin(ql * h) * std::norm(s.incident);
  const double flux_out = ar * ar * std::sin(qr * h);
  s.transmission = flux_out / flux_in;
  s.reflection = std::norm(s.reflected) / std::norm(s.incident);
  const double defect = std::abs(s.transmission + s.reflection - 1.0);
  if (!(defect <= 1e-8)) {
    std::ostringstream os;
    os << "oracle unitarity defect " << defect << " exceeds 1e-8";
    throw Error(ErrorKind::Numerical, os.str());
  }
  return s;
}

// Node count of the shooting solution with psi(lo) = 0, plus the sign of
// its value at the right edge.
int count_nodes(const std::vector<double>& xs, const std::vector<double>& k2, double h) {
  const int n = static_cast<int>(xs.size());
  const double c = h * h / 12.0;
  double prev = 0.0;
  double cur = 1e-30;
  int nodes = 0;
  int sign = 1;
  for (int i = 1; i < n - 1; ++i) {
    const double f_prev = 1.0 + c * k2[i - 1];
    const double f_next = 1.0 + c * k2[i + 1];
    double next = (2.0 * (1.0 - 5.0 * c * k2[i]) * cur - f_prev * prev) / f_next;
    if (std::abs(next) > 1e150) {
      next *= 1e-150;
      cur *= 1e-150;
    }
    if (next != 0.0) {
      const int s = next > 0.0 ? 1 : -1;
      if (s != sign) ++nodes;
      sign = s;
    }
    prev = cur;
    cur = next;
  }
  return nodes;
}

}  // namespace

void OracleConfig::validate() const {
  if (grid_points < 1001 || grid_points % 2 == 0) {
    throw Error(ErrorKind::Config, "oracle grid_points must be odd and >= 1001");
  }
  if (!(match_margin >= 0.0) || !(v_eps > 0.0)) {
    throw Error(ErrorKind::Config, "oracle match_margin must be >= 0 and v_eps > 0");
  }
}

TransmissionReport solve_scattering_exact(const ScatteringProblem& problem,
                                          const OracleConfig& config) {
  const auto s = integrate_scattering(problem, config);
  TransmissionReport report;
  report.transmission = s.transmission;
  report.reflection = s.reflection;
  report.method = TransmissionMethod::ExactNumerov;
  return report;
}

std::vector<double> solve_bound_states_exact(const ScatteringProblem& problem, int n_max,
                                             const OracleConfig& config) {
  problem.validate();
  config.validate();
  if (n_max < 0) throw Error(ErrorKind::Domain, "n_max must be non-negative");

  const int n = config.grid_points;
  const double h = problem.domain.width() / (n - 1);
  std::vector<double> xs(n), vs(n), k2(n);
  double vmin = problem.V(problem.domain.lo);
  for (int i = 0; i < n; ++i) {
    xs[i] = problem.domain.lo + h * i;
    vs[i] = problem.V(xs[i]);
    vmin = std::min(vmin, vs[i]);
  }
  const double ceiling = std::min(vs.front(), vs.back());
  const double scale = 2.0 * problem.context.mass / (problem.context.hbar * problem.context.hbar);
  auto nodes_at = [&](double E) {
    for (int i = 0; i < n; ++i) k2[i] = scale * (E - vs[i]);
    return count_nodes(xs, k2, h);
  };

  if (!(ceiling > vmin) || nodes_at(ceiling) < n_max + 1) {
    std::ostringstream os;
    os << "potential does not confine " << n_max + 1
       << " states below the edge value " << ceiling << " on the domain";
    throw Error(ErrorKind::Spectrum, os.str());
  }

  std::vector<double> levels;
  double floor = vmin;
  for (int level = 0; level <= n_max; ++level) {
    // Smallest E with more than `level` nodes below it.
    double lo = floor;
    double hi = ceiling;
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (nodes_at(mid) > level) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    levels.push_back(0.5 * (lo + hi));
    floor = levels.back();
  }
  return levels;
}

WavefunctionTable wavefunction_exact(const ScatteringProblem& problem, const OracleConfig& config) {
  auto s = integrate_scattering(problem, config);
  const auto& xs = s.grid.xs;
  const int n = static_cast<int>(xs.size());
  const double h = s.grid.h;
  for (auto& v : s.psi) v /= s.incident;

  WavefunctionTable table;
  table.xs = xs;
  table.psi = s.psi;
  table.dpsi.resize(n);
  const auto& p = s.psi;
  for (int i = 0; i < n; ++i) {
    if (i >= 2 && i <= n - 3) {
      table.dpsi[i] = (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * h);
    } else if (i < 2) {
      const int j = i;
      // One-sided fourth-order stencils at the left edge.
      if (j == 0) {
        table.dpsi[i] = (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) /
                        (12.0 * h);
      } else {
        table.dpsi[i] = (-3.0 * p[0] - 10.0 * p[1] + 18.0 * p[2] - 6.0 * p[3] + p[4]) / (12.0 * h);
      }
    } else if (i == n - 2) {
      table.dpsi[i] = (3.0 * p[n - 1] + 10.0 * p[n - 2] - 18.0 * p[n - 3] + 6.0 * p[n - 4] -
                       p[n - 5]) /
                      (12.0 * h);
    } else {
      table.dpsi[i] = (25.0 * p[n - 1] - 48.0 * p[n - 2] + 36.0 * p[n - 3] - 16.0 * p[n - 4] +
                       3.0 * p[n - 5]) /
                      (12.0 * h);
    }
  }

  TurningPoints tp;
  try {
    tp = find_turning_points(problem);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MultiWell) throw;
    tp.count = 0;
  }
  table.region_tags.reserve(n);
  for (double x : xs) table.region_tags.push_back(classify_region(problem, tp, x));
  return table;
}

}  // namespace semiclassic
