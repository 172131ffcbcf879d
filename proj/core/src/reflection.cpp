#include "semiclassic/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "semiclassic/error.hpp"
#include "semiclassic/quadrature.hpp"
#include "semiclassic/wkb.hpp"

namespace semiclassic {

namespace {

using cd = std::complex<double>;

constexpr int kAnchorCells = 2048;
constexpr int kCellRule = 20;

double momentum(const ScatteringProblem& problem, double x) {
  return std::sqrt(std::max(0.0, problem.momentum_squared(x)));
}

// r = p'/(2p) without the turning-point bookkeeping; callers have already
// established that p > 0 everywhere.
double reflection_rate(const ScatteringProblem& problem, double x) {
  const double p2 = problem.momentum_squared(x);
  return -problem.context.mass * problem.potential.derivative(x) / (2.0 * p2);
}

double vtilde_from_jet(const MomentumJet& jet) {
  const double p2 = jet.p * jet.p;
  return (3.0 * jet.dp * jet.dp - 2.0 * jet.p * jet.d2p) / (4.0 * p2 * p2);
}

// w(lo, x) for any x, from cumulative cell integrals on a uniform anchor grid.
class PhaseTracker {
 public:
  PhaseTracker(const ScatteringProblem& problem, int cells)
      : problem_(problem), lo_(problem.domain.lo), h_(problem.domain.width() / cells) {
    anchors_.resize(cells + 1, 0.0);
    for (int j = 0; j < cells; ++j) {
      anchors_[j + 1] = anchors_[j] + cell(lo_ + h_ * j, lo_ + h_ * (j + 1));
    }
  }

  double operator()(double x) const {
    const int cells = static_cast<int>(anchors_.size()) - 1;
    if (x < lo_) return -outside(x, lo_);
    const double hi = lo_ + h_ * cells;
    if (x > hi) return anchors_.back() + outside(hi, x);
    int j = static_cast<int>(std::lround((x - lo_) / h_));
    j = std::clamp(j, 0, cells);
    const double xa = lo_ + h_ * j;
    return anchors_[j] + cell(xa, x);
  }

 private:
  double cell(double a, double b) const {
    if (a == b) return 0.0;
    return quad::fixed_gauss_legendre([&](double t) { return momentum(problem_, t); }, a, b,
                                      kCellRule);
  }

  double outside(double a, double b) const {
    quad::Options opt;
    opt.initial_panels = 8;
    return quad::integrate([&](double t) { return momentum(problem_, t); }, a, b, opt).value;
  }

  const ScatteringProblem& problem_;
  double lo_;
  double h_;
  std::vector<double> anchors_;
};

std::vector<double> uniform(const Interval& domain, int points) {
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = domain.lo + domain.width() * i / (points - 1);
  }
  xs.back() = domain.hi;
  return xs;
}

int oscillation_panels(double phase_span) {
  const double half_waves = std::abs(phase_span) / std::numbers::pi;
  return static_cast<int>(std::clamp(std::ceil(half_waves) + 64.0, 64.0, 4096.0));
}

}  // namespace

void require_over_barrier(const ScatteringProblem& problem) {
  problem.validate();
  const double vmax = max_potential(problem);
  if (!(problem.energy > vmax)) {
    std::ostringstream os;
    os << "reflection series needs E > max V (over-barrier regime); E = " << problem.energy
       << ", max V = " << vmax << "; below the barrier use wkb, wkb-corrected or connection";
    throw Error(ErrorKind::Regime, os.str());
  }
}

double differential_reflection(const ScatteringProblem& problem, double x) {
  if (!(problem.momentum_squared(x) > 0.0)) {
    std::ostringstream os;
    os << "r(x) undefined at x = " << x << ": not in a classically allowed region";
    throw Error(ErrorKind::Domain, os.str());
  }
  const auto tp = find_turning_points(problem);
  try {
    require_outside_exclusion(problem, tp, x);
  } catch (const Error& e) {
    throw Error(ErrorKind::Domain, e.what());
  }
  return reflection_rate(problem, x);
}

PhaseGrid phase_transform(const ScatteringProblem& problem, int points,
                          std::optional<double> x0) {
  if (points < 2) throw Error(ErrorKind::Domain, "phase grid needs at least two points");
  require_over_barrier(problem);
  PhaseGrid grid;
  grid.xs = uniform(problem.domain, points);
  grid.x0 = x0.value_or(problem.domain.lo);
  grid.ps.resize(points);
  grid.ws.resize(points);
  for (int i = 0; i < points; ++i) grid.ps[i] = momentum(problem, grid.xs[i]);

  double w = 0.0;
  grid.ws[0] = 0.0;
  auto p = [&](double t) { return momentum(problem, t); };
  for (int i = 1; i < points; ++i) {
    w += quad::fixed_gauss_legendre(p, grid.xs[i - 1], grid.xs[i], kCellRule);
    grid.ws[i] = w;
  }
  if (grid.x0 != problem.domain.lo) {
    const PhaseTracker tracker(problem, kAnchorCells);
    const double shift = tracker(grid.x0);
    for (double& v : grid.ws) v -= shift;
  }
  return grid;
}

PicardResult picard_amplitudes(const ScatteringProblem& problem, int iterations,
                               const PicardOptions& options) {
  if (iterations < 1) throw Error(ErrorKind::Domain, "need at least one Picard iteration");
  PicardResult out;
  out.grid = phase_transform(problem, options.grid_points);
  const auto& g = out.grid;
  const std::size_t n = g.size();
  const double h = problem.domain.width() / static_cast<double>(n - 1);
  const double hbar = problem.context.hbar;

  std::vector<double> r(n);
  std::vector<cd> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = reflection_rate(problem, g.xs[i]);
    phase[i] = std::polar(1.0, 2.0 * g.ws[i] / hbar);
  }

  out.c_plus.assign(n, cd(1.0, 0.0));
  out.c_minus.assign(n, cd(0.0, 0.0));
  std::vector<cd> cp(n), cm(n);
  for (int it = 1; it <= iterations; ++it) {
    cm[n - 1] = 0.0;
    for (std::size_t j = n - 1; j-- > 0;) {
      const cd f0 = r[j] * out.c_plus[j] * phase[j];
      const cd f1 = r[j + 1] * out.c_plus[j + 1] * phase[j + 1];
      cm[j] = cm[j + 1] - 0.5 * h * (f0 + f1);
    }
    cp[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
      const cd g0 = r[j - 1] * cm[j - 1] * std::conj(phase[j - 1]);
      const cd g1 = r[j] * cm[j] * std::conj(phase[j]);
      cp[j] = cp[j - 1] + 0.5 * h * (g0 + g1);
    }
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      change = std::max({change, std::abs(cp[j] - out.c_plus[j]), std::abs(cm[j] - out.c_minus[j])});
      scale = std::max({scale, std::abs(cp[j]), std::abs(cm[j])});
    }
    out.c_plus.swap(cp);
    out.c_minus.swap(cm);
    out.iterations = it;
    out.last_change = change / scale;
    if (it > 1 && out.last_change < options.tolerance) break;
  }
  return out;
}

cd once_reflected_coefficient(const ScatteringProblem& problem, std::optional<double> x0) {
  require_over_barrier(problem);
  const PhaseTracker tracker(problem, kAnchorCells);
  const double hbar = problem.context.hbar;
  const double shift = x0 ? tracker(*x0) : 0.0;
  auto integrand = [&](double x) {
    return reflection_rate(problem, x) * std::polar(1.0, 2.0 * (tracker(x) - shift) / hbar);
  };
  // Scale for the absolute tolerance: int |r| on the anchor grid.
  double r_norm = 0.0;
  const int samples = 4096;
  const auto xs = uniform(problem.domain, samples);
  for (double x : xs) r_norm += std::abs(reflection_rate(problem, x));
  r_norm *= problem.domain.width() / samples;
  if (r_norm == 0.0) return {0.0, 0.0};

  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-14 * r_norm;  // near the rounding floor of an oscillatory sum
  opt.max_intervals = 40000;
  opt.initial_panels = oscillation_panels(2.0 * tracker(problem.domain.hi) / hbar);
  const auto result = quad::integrate(integrand, problem.domain.lo, problem.domain.hi, opt);
  return -result.value;
}

double effective_perturbation(const ScatteringProblem& problem, double x) {
  if (!(problem.momentum_squared(x) > 0.0)) {
    std::ostringstream os;
    os << "effective perturbation undefined at x = " << x << " (p = 0 or imaginary)";
    throw Error(ErrorKind::Domain, os.str());
  }
  return vtilde_from_jet(momentum_jet(problem, x));
}

EffectivePerturbationForms effective_perturbation_forms(const ScatteringProblem& problem,
                                                        double x) {
  EffectivePerturbationForms forms;
  forms.direct = effective_perturbation(problem, x);
  const auto jet = momentum_jet(problem, x);
  const double s1p = -jet.dp / (2.0 * jet.p);
  const double s1pp = -jet.d2p / (2.0 * jet.p) + jet.dp * jet.dp / (2.0 * jet.p * jet.p);
  forms.riccati = (s1pp + s1p * s1p) / (jet.p * jet.p);
  const auto terms = wkb_terms(problem, x, x);
  forms.sigma2 = -2.0 / jet.p * terms.sigma2_prime;
  return forms;
}

EffectivePerturbation sample_effective_perturbation(const ScatteringProblem& problem,
                                                    std::span<const double> xs, double x0) {
  EffectivePerturbation out;
  out.samples.reserve(xs.size());
  for (double x : xs) {
    out.samples.emplace_back(action_integral(problem, x0, x), effective_perturbation(problem, x));
  }
  return out;
}

cd matrix_element(const ScatteringProblem& problem, double k, double k_prime) {
  require_over_barrier(problem);
  const int samples = 4096;
  const auto xs = uniform(problem.domain, samples);
  std::vector<double> v(samples);
  double vmax = 0.0;
  for (int i = 0; i < samples; ++i) {
    v[i] = std::abs(effective_perturbation(problem, xs[i]));
    vmax = std::max(vmax, v[i]);
  }
  if (vmax == 0.0) return {0.0, 0.0};
  const double cut = 1e-12 * vmax;
  if (v.front() >= cut || v.back() >= cut) {
    std::ostringstream os;
    os << "effective perturbation has not decayed at the domain edges (|Vtilde| = "
       << std::max(v.front(), v.back()) << ", max " << vmax << "); widen the domain";
    throw Error(ErrorKind::Truncation, os.str());
  }
  int first = 0;
  while (v[first] < cut) ++first;
  int last = samples - 1;
  while (v[last] < cut) --last;
  const double lo = xs[std::max(0, first - 1)];
  const double hi = xs[std::min(samples - 1, last + 1)];

  const PhaseTracker tracker(problem, kAnchorCells);
  const double q = (k_prime - k) / problem.context.hbar;
  auto integrand = [&](double x) {
    const double p = momentum(problem, x);
    return effective_perturbation(problem, x) * p * std::polar(1.0, q * tracker(x));
  };
  double norm = 0.0;
  for (int i = first; i <= last; ++i) norm += v[i] * momentum(problem, xs[i]);
  norm *= problem.domain.width() / samples;

  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-14 * norm;
  opt.max_intervals = 40000;
  opt.initial_panels = oscillation_panels(q * (tracker(hi) - tracker(lo)));
  return quad::integrate(integrand, lo, hi, opt).value;
}

cd born_first_order(const ScatteringProblem& problem, double k_i, double k_f) {
  if (k_i == 0.0) throw Error(ErrorKind::Domain, "incident momentum must be nonzero");
  const cd prefactor(0.0, problem.context.hbar / (2.0 * std::abs(k_i)));
  return prefactor * matrix_element(problem, k_f, k_i);
}

double free_propagator(const PhysicalContext& context, double k) {
  context.validate();
  const double hk = context.hbar * k;
  if (std::abs(1.0 - std::abs(hk)) < 1e-6) {
    std::ostringstream os;
    os << "propagator pole: hbar k = " << hk << " is within 1e-6 of +-1";
    throw Error(ErrorKind::Domain, os.str());
  }
  return context.hbar * context.hbar / (2.0 * std::numbers::pi) / (1.0 - hk * hk);
}

}  // namespace semiclassic
