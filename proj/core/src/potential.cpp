#include "semiclassic/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semiclassic/error.hpp"

namespace semiclassic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << what << " must be a positive finite number (got " << value << ")";
    throw Error(ErrorKind::Config, os.str());
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::Config, std::string(what) + " must be finite");
  }
}

double sech(double u) { return 1.0 / std::cosh(u); }

}  // namespace

void PhysicalContext::validate() const {
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
}

// ---------------------------------------------------------------------------
// Tabulated potential: natural cubic spline.

TabulatedPotential::TabulatedPotential(std::vector<double> xs, std::vector<double> vs)
    : xs_(std::move(xs)), vs_(std::move(vs)) {
  if (xs_.size() != vs_.size()) {
    throw Error(ErrorKind::Config, "tabulated potential: x and V lists differ in length");
  }
  if (xs_.size() < 4) {
    throw Error(ErrorKind::Config, "tabulated potential needs at least 4 points");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    require_finite(xs_[i], "tabulated x");
    require_finite(vs_[i], "tabulated V");
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw Error(ErrorKind::Config, "tabulated potential: x must be strictly increasing");
    }
  }

  // Tridiagonal solve for the knot second derivatives, natural end conditions.
  const std::size_t n = xs_.size();
  m_.assign(n, 0.0);
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    const double rhs = 6.0 * ((vs_[i + 1] - vs_[i]) / h1 - (vs_[i] - vs_[i - 1]) / h0);
    const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
    c[i] = h1 / diag;
    d[i] = (rhs - h0 * d[i - 1]) / diag;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
  }
}

std::size_t TabulatedPotential::segment(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) {
    std::ostringstream os;
    os << "x = " << x << " outside tabulated range [" << xs_.front() << ", " << xs_.back()
       << "]";
    throw Error(ErrorKind::Domain, os.str());
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) i = 1;
  if (i >= xs_.size()) i = xs_.size() - 1;
  return i - 1;
}

double TabulatedPotential::value(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double u = 1.0 - t;
  return u * vs_[i] + t * vs_[i + 1] +
         h * h / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
}

double TabulatedPotential::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return (1.0 - t) * m_[i] + t * m_[i + 1];
}

// ---------------------------------------------------------------------------

PotentialModel::PotentialModel(Form form) : form_(std::move(form)) {
  std::visit(overloaded{
                 [](const SquareBarrier& p) {
                   require_finite(p.height, "height");
                   require_positive(p.width, "width");
                   require_finite(p.center, "center");
                 },
                 [](const GaussianBump& p) {
                   require_finite(p.amplitude, "amplitude");
                   require_positive(p.width, "width");
                   require_finite(p.center, "center");
                 },
                 [](const EckartBarrier& p) {
                   require_finite(p.height, "height");
                   require_positive(p.width, "width");
                   require_finite(p.center, "center");
                 },
                 [](const ParabolicBarrier& p) {
                   require_finite(p.height, "height");
                   require_positive(p.curvature, "curvature");
                   require_finite(p.center, "center");
                 },
                 [](const HarmonicWell& p) { require_positive(p.stiffness, "stiffness"); },
                 [](const LinearRamp& p) {
                   require_finite(p.offset, "offset");
                   require_finite(p.slope, "slope");
                 },
                 [](const TabulatedPotential&) {},
             },
             form_);
}

double PotentialModel::value(double x) const {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "potential evaluated at non-finite x");
  return std::visit(overloaded{
                        [x](const SquareBarrier& p) {
                          const double d = std::abs(x - p.center);
                          const double half = 0.5 * p.width;
                          if (d < half) return p.height;
                          if (d == half) return 0.5 * p.height;
                          return 0.0;
                        },
                        [x](const GaussianBump& p) {
                          const double u = (x - p.center) / p.width;
                          return p.amplitude * std::exp(-u * u);
                        },
                        [x](const EckartBarrier& p) {
                          const double s = sech((x - p.center) / p.width);
                          return p.height * s * s;
                        },
                        [x](const ParabolicBarrier& p) {
                          const double u = x - p.center;
                          return p.height - 0.5 * p.curvature * u * u;
                        },
                        [x](const HarmonicWell& p) { return 0.5 * p.stiffness * x * x; },
                        [x](const LinearRamp& p) { return p.offset + p.slope * x; },
                        [x](const TabulatedPotential& p) { return p.value(x); },
                    },
                    form_);
}

double PotentialModel::derivative(double x) const {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "potential evaluated at non-finite x");
  return std::visit(
      overloaded{
          [](const SquareBarrier&) { return 0.0; },
          [x](const GaussianBump& p) {
            const double u = (x - p.center) / p.width;
            return -2.0 * u / p.width * p.amplitude * std::exp(-u * u);
          },
          [x](const EckartBarrier& p) {
            const double u = (x - p.center) / p.width;
            const double s = sech(u);
            return -2.0 * p.height * s * s * std::tanh(u) / p.width;
          },
          [x](const ParabolicBarrier& p) { return -p.curvature * (x - p.center); },
          [x](const HarmonicWell& p) { return p.stiffness * x; },
          [](const LinearRamp& p) { return p.slope; },
          [x](const TabulatedPotential& p) {
            // Central difference, shifted inward at the table ends.
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            double lo = x - h;
            double hi = x + h;
            if (lo < p.x_min()) {
              lo = p.x_min();
              hi = lo + 2.0 * h;
            } else if (hi > p.x_max()) {
              hi = p.x_max();
              lo = hi - 2.0 * h;
            }
            p.value(x);  // range check on x itself
            return (p.value(hi) - p.value(lo)) / (hi - lo);
          },
      },
      form_);
}

double PotentialModel::second_derivative(double x) const {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "potential evaluated at non-finite x");
  return std::visit(overloaded{
                        [](const SquareBarrier&) { return 0.0; },
                        [x](const GaussianBump& p) {
                          const double u = (x - p.center) / p.width;
                          return p.amplitude * std::exp(-u * u) * (4.0 * u * u - 2.0) /
                                 (p.width * p.width);
                        },
                        [x](const EckartBarrier& p) {
                          const double u = (x - p.center) / p.width;
                          const double s = sech(u);
                          const double t = std::tanh(u);
                          return p.height * s * s * (4.0 * t * t - 2.0 * s * s) /
                                 (p.width * p.width);
                        },
                        [](const ParabolicBarrier& p) { return -p.curvature; },
                        [](const HarmonicWell& p) { return p.stiffness; },
                        [](const LinearRamp&) { return 0.0; },
                        [x](const TabulatedPotential& p) { return p.second_derivative(x); },
                    },
                    form_);
}

std::string_view PotentialModel::name() const {
  return std::visit(overloaded{
                        [](const SquareBarrier&) { return std::string_view("square"); },
                        [](const GaussianBump&) { return std::string_view("gaussian"); },
                        [](const EckartBarrier&) { return std::string_view("eckart"); },
                        [](const ParabolicBarrier&) { return std::string_view("parabolic"); },
                        [](const HarmonicWell&) { return std::string_view("harmonic"); },
                        [](const LinearRamp&) { return std::string_view("linear"); },
                        [](const TabulatedPotential&) { return std::string_view("tabulated"); },
                    },
                    form_);
}

bool PotentialModel::is_discontinuous() const {
  return std::holds_alternative<SquareBarrier>(form_);
}

std::optional<double> PotentialModel::symmetry_center() const {
  return std::visit(overloaded{
                        [](const SquareBarrier& p) -> std::optional<double> { return p.center; },
                        [](const GaussianBump& p) -> std::optional<double> { return p.center; },
                        [](const EckartBarrier& p) -> std::optional<double> { return p.center; },
                        [](const ParabolicBarrier& p) -> std::optional<double> {
                          return p.center;
                        },
                        [](const HarmonicWell&) -> std::optional<double> { return 0.0; },
                        [](const LinearRamp&) -> std::optional<double> { return std::nullopt; },
                        [](const TabulatedPotential&) -> std::optional<double> {
                          return std::nullopt;
                        },
                    },
                    form_);
}

double evaluate(const PotentialModel& potential, double x) { return potential.value(x); }
double derivative(const PotentialModel& potential, double x) { return potential.derivative(x); }

// ---------------------------------------------------------------------------

void ScatteringProblem::validate() const {
  context.validate();
  if (!std::isfinite(energy)) throw Error(ErrorKind::Config, "energy must be finite");
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < domain.hi)) {
    throw Error(ErrorKind::Config, "domain must satisfy x_min < x_max (both finite)");
  }
  if (const auto* tab = std::get_if<TabulatedPotential>(&potential.form())) {
    if (domain.lo < tab->x_min() || domain.hi > tab->x_max()) {
      throw Error(ErrorKind::Config, "domain extends beyond the tabulated potential grid");
    }
  }
}

double ScatteringProblem::momentum_squared(double x) const {
  return 2.0 * context.mass * (energy - potential.value(x));
}

namespace {

// Bisection on f = V - E down to adjacent doubles; returns the endpoint
// with the smaller residual.
double bisect_root(const ScatteringProblem& problem, double lo, double hi, double flo) {
  const double E = problem.energy;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fmid = problem.V(mid) - E;
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  const double rlo = std::abs(problem.V(lo) - E);
  const double rhi = std::abs(problem.V(hi) - E);
  return rlo <= rhi ? lo : hi;
}

}  // namespace

TurningPoints find_turning_points(const ScatteringProblem& problem, RootScanOptions options) {
  problem.validate();
  if (options.panels < 2) throw Error(ErrorKind::Config, "root scan needs at least 2 panels");

  const double E = problem.energy;
  const double lo = problem.domain.lo;
  const double width = problem.domain.width();
  const int n = options.panels;

  std::vector<double> roots;
  auto node = [&](int i) { return i == n ? problem.domain.hi : lo + width * i / n; };

  double x_prev = node(0);
  double f_prev = problem.V(x_prev) - E;
  if (f_prev == 0.0) roots.push_back(x_prev);
  for (int i = 1; i <= n; ++i) {
    const double x = node(i);
    const double f = problem.V(x) - E;
    if (f == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
      roots.push_back(bisect_root(problem, x_prev, x, f_prev));
    }
    x_prev = x;
    f_prev = f;
  }

  // Exact zeros at a node touching zero from one side are not crossings.
  std::vector<double> crossings;
  for (double r : roots) {
    if (problem.V(r) - E != 0.0) {
      crossings.push_back(r);
      continue;
    }
    const double h = width / n * 0.5;
    const double left = std::max(lo, r - h);
    const double right = std::min(problem.domain.hi, r + h);
    const double fl = problem.V(left) - E;
    const double fr = problem.V(right) - E;
    if (left == r || right == r || (fl < 0.0) != (fr < 0.0)) crossings.push_back(r);
  }

  TurningPoints tp;
  tp.count = static_cast<int>(crossings.size());
  if (tp.count > 2) {
    std::ostringstream os;
    os << "found " << tp.count << " turning points at E = " << E
       << "; multi-well potentials are not supported";
    throw Error(ErrorKind::MultiWell, os.str());
  }
  if (tp.count >= 1) tp.a = crossings.front();
  if (tp.count == 2) tp.b = crossings.back();
  if (tp.count == 1) tp.b = tp.a;
  return tp;
}

std::complex<double> local_wavenumber(const ScatteringProblem& problem, double x) {
  const double p2 = problem.momentum_squared(x);
  const double hbar = problem.context.hbar;
  if (p2 >= 0.0) return {std::sqrt(p2) / hbar, 0.0};
  return {0.0, std::sqrt(-p2) / hbar};
}

double exclusion_radius(const ScatteringProblem& problem, double turning_point) {
  if (problem.potential.is_discontinuous()) return 0.0;
  const double slope = std::abs(problem.potential.derivative(turning_point));
  if (slope == 0.0) return std::numeric_limits<double>::infinity();
  const double hbar = problem.context.hbar;
  return std::cbrt(hbar * hbar / (2.0 * problem.context.mass * slope));
}

double max_potential(const ScatteringProblem& problem, int samples) {
  const double lo = problem.domain.lo;
  const double h = problem.domain.width() / samples;
  int best = 0;
  double vmax = problem.V(lo);
  for (int i = 1; i <= samples; ++i) {
    const double v = problem.V(i == samples ? problem.domain.hi : lo + h * i);
    if (v > vmax) {
      vmax = v;
      best = i;
    }
  }
  // Golden-section refinement around the best sample.
  double a = std::max(lo, lo + h * (best - 1));
  double b = std::min(problem.domain.hi, lo + h * (best + 1));
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (problem.V(c) > problem.V(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::max(vmax, problem.V(0.5 * (a + b)));
}

}  // namespace semiclassic
