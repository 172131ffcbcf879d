#include "semiclassic/connection.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "semiclassic/error.hpp"
#include "semiclassic/special_fn.hpp"

namespace semiclassic {

namespace {

using cd = std::complex<double>;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

void require_slope(bool ok, double slope, const char* expected) {
  if (!ok) {
    std::ostringstream os;
    os << "connection formula for " << expected << " potential applied at slope " << slope;
    throw Error(ErrorKind::Orientation, os.str());
  }
}

}  // namespace

ForbiddenAmplitudes connect_increasing(const AllowedAmplitudes& allowed, double slope) {
  require_slope(slope > 0.0, slope, "an increasing");
  return {allowed.cos_coeff / 2.0, -allowed.sin_coeff};
}

AllowedAmplitudes connect_increasing_inverse(const ForbiddenAmplitudes& forbidden, double slope) {
  require_slope(slope > 0.0, slope, "an increasing");
  return {2.0 * forbidden.decaying, -forbidden.growing};
}

AllowedAmplitudes connect_decreasing(const ForbiddenAmplitudes& forbidden, double slope) {
  require_slope(slope < 0.0, slope, "a decreasing");
  return {2.0 * forbidden.decaying, -forbidden.growing};
}

ForbiddenAmplitudes connect_decreasing_inverse(const AllowedAmplitudes& allowed, double slope) {
  require_slope(slope < 0.0, slope, "a decreasing");
  return {allowed.cos_coeff / 2.0, -allowed.sin_coeff};
}

TravelingWaves decompose_left(const AllowedAmplitudes& left) {
  // C cos(u) + S sin(u), u = theta - pi/4
  //   = (C + iS)/2 e^{i pi/4} e^{-i theta} + (C - iS)/2 e^{-i pi/4} e^{i theta}
  const cd i(0.0, 1.0);
  const cd c = left.cos_coeff;
  const cd s = left.sin_coeff;
  return {(c + i * s) / 2.0 * std::exp(i * kQuarterPi),
          (c - i * s) / 2.0 * std::exp(-i * kQuarterPi)};
}

PatchedAmplitudes patch_barrier(double sigma_star, cd outgoing) {
  const cd i(0.0, 1.0);
  PatchedAmplitudes out;
  out.sigma_star = sigma_star;
  out.outgoing = outgoing;
  // exp(i(theta - pi/4)) = cos(theta - pi/4) + i sin(theta - pi/4)
  out.right = {2.0 * outgoing, 2.0 * i * outgoing};
  // Through b (V' < 0 there), amplitudes of exp(-+ int_x^b beta).
  const ForbiddenAmplitudes at_b = connect_decreasing_inverse(out.right, -1.0);
  // Re-reference to a: int_x^b beta = sigma* - int_a^x beta, so the roles of
  // the two exponentials swap and pick up e^{+-sigma*}.
  out.barrier.decaying = at_b.growing * std::exp(sigma_star);
  out.barrier.growing = at_b.decaying * std::exp(-sigma_star);
  out.left = connect_increasing_inverse(out.barrier, 1.0);
  out.left_waves = decompose_left(out.left);
  return out;
}

BarrierCurrents barrier_currents(const PatchedAmplitudes& patched, const PhysicalContext& context) {
  const double unit = context.hbar / context.mass;
  BarrierCurrents j;
  j.incident = unit * std::norm(patched.left_waves.incident);
  j.reflected = unit * std::norm(patched.left_waves.reflected);
  j.transmitted = unit * std::norm(2.0 * patched.outgoing);
  j.net_left = j.incident - j.reflected;
  return j;
}

BarrierCurrents closed_form_currents(double sigma_star, cd outgoing,
                                     const PhysicalContext& context) {
  const double unit = context.hbar / context.mass;
  const double b2 = std::norm(outgoing);
  const double plus = std::exp(sigma_star) + 0.25 * std::exp(-sigma_star);
  const double minus = std::exp(sigma_star) - 0.25 * std::exp(-sigma_star);
  BarrierCurrents j;
  j.transmitted = 4.0 * b2 * unit;
  j.incident = 4.0 * b2 * plus * plus * unit;
  j.reflected = 4.0 * b2 * minus * minus * unit;
  j.net_left = 4.0 * b2 * (plus * plus - minus * minus) * unit;
  return j;
}

double probability_current(cd psi, cd dpsi, const PhysicalContext& context) {
  const cd i(0.0, 1.0);
  return (context.hbar / (i * context.mass) * std::conj(psi) * dpsi).real();
}

TransmissionReport transmission_from_currents(const ScatteringProblem& problem) {
  const double sigma = barrier_integral(problem);
  const auto patched = patch_barrier(sigma, cd(1.0, 0.0));
  const auto j = barrier_currents(patched, problem.context);
  TransmissionReport report;
  report.sigma_star = sigma;
  report.transmission = j.transmitted / j.incident;
  report.reflection = j.reflected / j.incident;
  report.method = TransmissionMethod::ConnectionPatched;
  return report;
}

WavefunctionTable patched_barrier_solution(const ScatteringProblem& problem, cd outgoing,
                                           std::span<const double> xs) {
  problem.validate();
  const auto tp = find_turning_points(problem);
  const double sigma = barrier_integral(problem, tp);
  const auto amp = patch_barrier(sigma, outgoing);
  const double hbar = problem.context.hbar;
  const double m = problem.context.mass;
  const cd i(0.0, 1.0);

  WavefunctionTable table;
  table.xs.assign(xs.begin(), xs.end());
  for (double x : xs) {
    require_outside_exclusion(problem, tp, x);
    const RegionTag tag = classify_region(problem, tp, x);
    const double v1 = problem.potential.derivative(x);
    cd psi, dpsi;
    switch (tag) {
      case RegionTag::AllowedLeft: {
        const double k = std::sqrt(problem.momentum_squared(x)) / hbar;
        const double dk = -m * v1 / (hbar * hbar * k);
        const double u = action_integral(problem, x, tp.a) / hbar - kQuarterPi;
        const cd c = amp.left.cos_coeff;
        const cd s = amp.left.sin_coeff;
        psi = (c * std::cos(u) + s * std::sin(u)) / std::sqrt(k);
        dpsi = -dk / (2.0 * k) * psi - k * (-c * std::sin(u) + s * std::cos(u)) / std::sqrt(k);
        break;
      }
      case RegionTag::Forbidden: {
        const double beta = std::sqrt(-problem.momentum_squared(x)) / hbar;
        const double dbeta = m * v1 / (hbar * hbar * beta);
        const double s = forbidden_integral(problem, tp.a, x);
        const cd dec = amp.barrier.decaying * std::exp(-s);
        const cd grow = amp.barrier.growing * std::exp(s);
        psi = (dec + grow) / std::sqrt(beta);
        dpsi = -dbeta / (2.0 * beta) * psi + beta * (grow - dec) / std::sqrt(beta);
        break;
      }
      case RegionTag::AllowedRight: {
        const double k = std::sqrt(problem.momentum_squared(x)) / hbar;
        const double dk = -m * v1 / (hbar * hbar * k);
        const double u = action_integral(problem, tp.b, x) / hbar - kQuarterPi;
        psi = 2.0 * outgoing * std::exp(i * u) / std::sqrt(k);
        dpsi = -dk / (2.0 * k) * psi + i * k * psi;
        break;
      }
      case RegionTag::Allowed:
        throw Error(ErrorKind::Regime, "allowed pocket inside the barrier; not a single barrier");
    }
    table.psi.push_back(psi);
    table.dpsi.push_back(dpsi);
    table.region_tags.push_back(tag);
  }
  return table;
}

WavefunctionTable patched_barrier_solution(const ScatteringProblem& problem, cd outgoing,
                                           int samples) {
  if (samples < 2) throw Error(ErrorKind::Domain, "need at least two samples");
  const auto tp = find_turning_points(problem);
  if (tp.count != 2) barrier_integral(problem, tp);  // raises the no-barrier error
  const double ra = exclusion_radius(problem, tp.a);
  const double rb = exclusion_radius(problem, tp.b);
  std::vector<double> xs;
  for (int n = 0; n < samples; ++n) {
    const double x = problem.domain.lo + problem.domain.width() * n / (samples - 1);
    if (std::abs(x - tp.a) < ra || std::abs(x - tp.b) < rb) continue;
    xs.push_back(x);
  }
  return patched_barrier_solution(problem, outgoing, xs);
}

double airy_scale(const ScatteringProblem& problem, double turning_point) {
  const double mu = problem.potential.derivative(turning_point);
  if (mu == 0.0 || !std::isfinite(mu)) {
    throw Error(ErrorKind::Linearization, "zero slope at the turning point; no Airy scaling");
  }
  const double hbar = problem.context.hbar;
  return std::cbrt(2.0 * problem.context.mass * mu / (hbar * hbar));
}

WavefunctionTable airy_local_solution(const ScatteringProblem& problem, double turning_point,
                                      std::span<const double> xs, AiryKind kind) {
  problem.validate();
  const double E = problem.energy;
  const double va = problem.V(turning_point);
  if (std::abs(va - E) > 1e-8 * std::max(1.0, std::abs(E))) {
    std::ostringstream os;
    os << "x = " << turning_point << " is not a turning point (V - E = " << va - E << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  const double mu = problem.potential.derivative(turning_point);
  const double alpha = airy_scale(problem, turning_point);
  const double floor = 1e-12 * std::max(1.0, std::abs(E));
  const auto tp = find_turning_points(problem);

  WavefunctionTable table;
  table.xs.assign(xs.begin(), xs.end());
  for (double x : xs) {
    const double v = problem.V(x);
    const double lin_error = std::abs(v - va - mu * (x - turning_point));
    if (lin_error > 0.1 * std::abs(E - v) + floor) {
      std::ostringstream os;
      os << "x = " << x << " is outside the linearization neighbourhood of " << turning_point;
      throw Error(ErrorKind::Linearization, os.str());
    }
    const AiryPair f = airy_auto(alpha * (x - turning_point));
    const double value = kind == AiryKind::Ai ? f.ai : f.bi;
    const double slope = kind == AiryKind::Ai ? f.ai_prime : f.bi_prime;
    table.psi.emplace_back(value, 0.0);
    table.dpsi.emplace_back(alpha * slope, 0.0);
    table.region_tags.push_back(classify_region(problem, tp, x));
  }
  return table;
}

}  // namespace semiclassic
