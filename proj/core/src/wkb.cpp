#include "semiclassic/wkb.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "semiclassic/error.hpp"
#include "semiclassic/quadrature.hpp"

namespace semiclassic {

namespace {

constexpr int kRegionSamples = 257;

double momentum_tolerance(const ScatteringProblem& problem) {
  return 1e-10 * 2.0 * problem.context.mass * std::max(1.0, std::abs(problem.energy));
}

// Error{Region} when the sign of E - V changes inside (lo, hi).
void require_single_region(const ScatteringProblem& problem, double lo, double hi,
                           bool allowed) {
  const double tol = momentum_tolerance(problem);
  for (int i = 1; i < kRegionSamples; ++i) {
    const double x = lo + (hi - lo) * i / kRegionSamples;
    const double p2 = problem.momentum_squared(x);
    if ((allowed && p2 < -tol) || (!allowed && p2 > tol)) {
      std::ostringstream os;
      os << "interval [" << lo << ", " << hi << "] is not a single "
         << (allowed ? "allowed" : "forbidden") << " region (turning point near x = " << x
         << ")";
      throw Error(ErrorKind::Region, os.str());
    }
  }
}

quad::Options region_options(double scale) {
  quad::Options opt;
  opt.abs_tol = 1e-15 * std::max(scale, 1e-300);
  opt.rel_tol = 1e-13;
  opt.initial_panels = 4;
  return opt;
}

double region_integral(const ScatteringProblem& problem, double x0, double x, bool allowed) {
  if (x0 == x) return 0.0;
  const double lo = std::min(x0, x);
  const double hi = std::max(x0, x);
  require_single_region(problem, lo, hi, allowed);
  const double sign = allowed ? 1.0 : -1.0;
  auto integrand = [&](double t) {
    return std::sqrt(std::max(0.0, sign * problem.momentum_squared(t)));
  };
  const double scale = integrand(0.5 * (lo + hi)) * (hi - lo);
  auto result = quad::integrate_sqrt_ends(integrand, x0, x, region_options(scale));
  return result.value;
}

}  // namespace

std::string_view method_name(TransmissionMethod method) {
  switch (method) {
    case TransmissionMethod::WkbLeading: return "wkb";
    case TransmissionMethod::WkbCorrected: return "wkb-corrected";
    case TransmissionMethod::ConnectionPatched: return "connection";
    case TransmissionMethod::BornFirstOrder: return "born1";
    case TransmissionMethod::ExactNumerov: return "exact";
  }
  return "unknown";
}

MomentumJet momentum_jet(const ScatteringProblem& problem, double x) {
  const double m = problem.context.mass;
  const double p2 = problem.momentum_squared(x);
  if (!(p2 > 0.0)) {
    std::ostringstream os;
    os << "x = " << x << " is not in a classically allowed region (E <= V)";
    throw Error(ErrorKind::Regime, os.str());
  }
  const double v1 = problem.potential.derivative(x);
  const double v2 = problem.potential.second_derivative(x);
  MomentumJet jet;
  jet.p = std::sqrt(p2);
  jet.dp = -m * v1 / jet.p;
  jet.d2p = -m * v2 / jet.p - m * m * v1 * v1 / (p2 * jet.p);
  return jet;
}

RegionTag classify_region(const ScatteringProblem& problem, const TurningPoints& tp, double x) {
  if (problem.momentum_squared(x) < 0.0) return RegionTag::Forbidden;
  if (tp.count == 2) {
    if (x <= tp.a) return RegionTag::AllowedLeft;
    if (x >= tp.b) return RegionTag::AllowedRight;
    return RegionTag::Allowed;
  }
  if (tp.count == 1) return x < tp.a ? RegionTag::AllowedLeft : RegionTag::AllowedRight;
  return RegionTag::Allowed;
}

void require_outside_exclusion(const ScatteringProblem& problem, const TurningPoints& tp,
                               double x) {
  auto check = [&](double xc) {
    const double r = exclusion_radius(problem, xc);
    if (std::abs(x - xc) < r) {
      std::ostringstream os;
      os << "x = " << x << " lies within the exclusion radius " << r
         << " of the turning point " << xc;
      throw Error(ErrorKind::Proximity, os.str());
    }
  };
  if (tp.count >= 1) check(tp.a);
  if (tp.count == 2) check(tp.b);
}

double action_integral(const ScatteringProblem& problem, double x0, double x) {
  return region_integral(problem, x0, x, true);
}

double forbidden_integral(const ScatteringProblem& problem, double x0, double x) {
  return region_integral(problem, x0, x, false) / problem.context.hbar;
}

double barrier_integral(const ScatteringProblem& problem, const TurningPoints& tp) {
  if (tp.count != 2) {
    std::ostringstream os;
    os << "no barrier at E = " << problem.energy << " (" << tp.count << " turning point"
       << (tp.count == 1 ? "" : "s") << ")";
    throw Error(ErrorKind::NoBarrier, os.str());
  }
  if (problem.momentum_squared(0.5 * (tp.a + tp.b)) >= 0.0) {
    throw Error(ErrorKind::NoBarrier,
                "region between the turning points is classically allowed (a well, not a "
                "barrier)");
  }
  return forbidden_integral(problem, tp.a, tp.b);
}

double barrier_integral(const ScatteringProblem& problem) {
  return barrier_integral(problem, find_turning_points(problem));
}

WkbTerms wkb_terms(const ScatteringProblem& problem, double x0, double x) {
  const auto tp = find_turning_points(problem);
  require_outside_exclusion(problem, tp, x);
  const auto jet = momentum_jet(problem, x);

  // sigma1' = -p'/(2p); the hbar^2 order of the Riccati equation gives
  // sigma2' = -(sigma1'^2 + sigma1'') / (2 sigma0').
  const double s1p = -jet.dp / (2.0 * jet.p);
  const double s1pp = -jet.d2p / (2.0 * jet.p) + jet.dp * jet.dp / (2.0 * jet.p * jet.p);

  WkbTerms terms;
  terms.sigma0 = action_integral(problem, x0, x);
  terms.sigma1 = -std::log(std::sqrt(jet.p));
  terms.sigma2_prime = -(s1p * s1p + s1pp) / (2.0 * jet.p);
  terms.evaluation_point = x;
  return terms;
}

WavefunctionTable wkb_wavefunction(const ScatteringProblem& problem,
                                   const AmplitudePair& amplitudes, double x0,
                                   std::span<const double> xs) {
  problem.validate();
  const auto tp = find_turning_points(problem);
  const RegionTag region = classify_region(problem, tp, x0);
  const double hbar = problem.context.hbar;
  const double m = problem.context.mass;
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);

  WavefunctionTable table;
  table.xs.assign(xs.begin(), xs.end());
  table.psi.reserve(xs.size());
  table.dpsi.reserve(xs.size());
  table.region_tags.reserve(xs.size());
  for (double x : xs) {
    require_outside_exclusion(problem, tp, x);
    if (classify_region(problem, tp, x) != region) {
      std::ostringstream os;
      os << "x = " << x << " is not in the same region as the reference point x0 = " << x0;
      throw Error(ErrorKind::Region, os.str());
    }
    const double v1 = problem.potential.derivative(x);
    cd psi, dpsi;
    if (region != RegionTag::Forbidden) {
      const double p = std::sqrt(problem.momentum_squared(x));
      const double dp = -m * v1 / p;
      const double w = action_integral(problem, x0, x);
      const cd fwd = amplitudes.c_plus * std::exp(i * w / hbar);
      const cd bwd = amplitudes.c_minus * std::exp(-i * w / hbar);
      psi = (fwd + bwd) / std::sqrt(p);
      dpsi = -dp / (2.0 * p) * psi + i * p / hbar * (fwd - bwd) / std::sqrt(p);
    } else {
      const double beta = std::sqrt(-problem.momentum_squared(x)) / hbar;
      const double dbeta = m * v1 / (hbar * hbar * beta);
      const double s = forbidden_integral(problem, x0, x);
      const cd dec = amplitudes.c_plus * std::exp(-s);
      const cd grow = amplitudes.c_minus * std::exp(s);
      psi = (dec + grow) / std::sqrt(beta);
      dpsi = -dbeta / (2.0 * beta) * psi + beta * (grow - dec) / std::sqrt(beta);
    }
    table.psi.push_back(psi);
    table.dpsi.push_back(dpsi);
    table.region_tags.push_back(region);
  }
  return table;
}

double leading_transmission(double sigma_star) { return std::exp(-2.0 * sigma_star); }

double corrected_transmission(double sigma_star) {
  const double t = std::exp(-2.0 * sigma_star);
  const double d = 1.0 + 0.25 * t;
  return t / (d * d);
}

TransmissionReport transmission_leading(const ScatteringProblem& problem,
                                        TransmissionMethod method) {
  if (method != TransmissionMethod::WkbLeading && method != TransmissionMethod::WkbCorrected) {
    throw Error(ErrorKind::Domain, "transmission_leading supports wkb and wkb-corrected only");
  }
  TransmissionReport report;
  report.sigma_star = barrier_integral(problem);
  report.transmission = method == TransmissionMethod::WkbLeading
                            ? leading_transmission(report.sigma_star)
                            : corrected_transmission(report.sigma_star);
  report.reflection = 1.0 - report.transmission;
  report.method = method;
  return report;
}

double quantization_residual(const ScatteringProblem& problem, int n) {
  const auto tp = find_turning_points(problem);
  if (tp.count != 2) {
    std::ostringstream os;
    os << "quantization needs two turning points; found " << tp.count << " at E = "
       << problem.energy;
    throw Error(ErrorKind::Regime, os.str());
  }
  return action_integral(problem, tp.a, tp.b) - (n + 0.5) * std::numbers::pi * problem.context.hbar;
}

double quantize(const ScatteringProblem& problem, int n, Interval bracket) {
  if (n < 0) throw Error(ErrorKind::Domain, "quantum number must be non-negative");
  if (!(bracket.lo < bracket.hi)) throw Error(ErrorKind::Bracket, "empty energy bracket");
  ScatteringProblem trial = problem;
  auto residual = [&](double E) {
    trial.energy = E;
    return quantization_residual(trial, n);
  };
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = residual(lo);
  const double fhi = residual(hi);
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream os;
    os << "quantization residual does not change sign on [" << lo << ", " << hi << "] for n = "
       << n;
    throw Error(ErrorKind::Bracket, os.str());
  }
  while (hi - lo > 1e-12 * std::max(std::abs(lo), std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = residual(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace semiclassic
