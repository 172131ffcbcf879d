#include "semiclassic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "semiclassic/analytic.hpp"
#include "semiclassic/connection.hpp"
#include "semiclassic/csv.hpp"
#include "semiclassic/error.hpp"
#include "semiclassic/oracle.hpp"
#include "semiclassic/reflection.hpp"
#include "semiclassic/runner.hpp"
#include "semiclassic/special_fn.hpp"
#include "semiclassic/wkb.hpp"

namespace semiclassic {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult make(int criterion, std::string check, double value, double threshold) {
  const bool pass = std::isfinite(value) && value <= threshold;
  return {criterion, std::move(check), value, threshold, pass};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ScatteringProblem problem_of(PotentialModel model, double energy, double lo, double hi) {
  return ScatteringProblem{PhysicalContext{}, std::move(model), energy, Interval{lo, hi}};
}

std::vector<CheckResult> criterion1() {
  double wronskian = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = -10.0 + 20.0 * i / 99.0;
    wronskian = std::max(wronskian, std::abs(airy(z).wronskian() - 1.0 / kPi));
  }
  double bessel = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double z = 0.05 * i;
    const AiryPair s = airy(z);
    const AiryPair b = airy_bessel_form(z);
    bessel = std::max({bessel, rel(b.ai, s.ai), rel(b.bi, s.bi)});
  }
  double laplace = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double z = -2.0 + 0.1 * i;
    laplace = std::max(laplace, std::abs(airy_laplace_contour(z) - airy(z).ai));
  }
  return {make(1, "wronskian_abs_error", wronskian, 1e-10),
          make(1, "bessel_form_rel_error", bessel, 1e-9),
          make(1, "laplace_integral_abs_error", laplace, 1e-6)};
}

std::vector<CheckResult> criterion2() {
  const auto problem = problem_of(HarmonicWell{1.0}, 0.0, -10.0, 10.0);
  const auto wkb = wkb_levels(problem, 10);
  const auto exact = solve_bound_states_exact(problem, 10);
  double analytic = 0.0;
  double oracle = 0.0;
  for (int n = 0; n <= 10; ++n) {
    analytic = std::max(analytic, std::abs(wkb[n] - (n + 0.5)));
    oracle = std::max(oracle, std::abs(wkb[n] - exact[n]));
  }
  return {make(2, "quantization_abs_error", analytic, 1e-8),
          make(2, "quantization_vs_oracle", oracle, 1e-6)};
}

std::vector<CheckResult> criterion3() {
  double parabolic = 0.0;
  for (double E : {0.1, 0.5, 0.9}) {
    const auto p = problem_of(ParabolicBarrier{1.0, 1.0, 0.0}, E, -5.0, 5.0);
    parabolic = std::max(parabolic, rel(barrier_integral(p), kPi * (1.0 - E)));
  }
  const auto sq = problem_of(SquareBarrier{1.0, 2.0, 0.0}, 0.5, -5.0, 5.0);
  const double square = rel(barrier_integral(sq), 2.0 * std::sqrt(2.0 * 0.5));
  return {make(3, "parabolic_sigma_rel_error", parabolic, 1e-10),
          make(3, "square_sigma_rel_error", square, 1e-12)};
}

std::vector<CheckResult> criterion4() {
  const PhysicalContext ctx;
  double identity = 0.0;
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const auto j = barrier_currents(patch_barrier(s, {1.0, 0.0}), ctx);
    identity = std::max(identity, rel(j.transmitted / j.incident, corrected_transmission(s)));
  }
  double excess = -1.0;
  double agreement = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double s = 0.01 * i;
    excess = std::max(excess, corrected_transmission(s) - leading_transmission(s));
    if (s >= 2.3) {
      agreement = std::max(agreement, rel(corrected_transmission(s), leading_transmission(s)));
    }
  }
  return {make(4, "connection_vs_corrected_rel", identity, 1e-14),
          make(4, "corrected_minus_bare_max", excess, 0.0),
          make(4, "corrected_vs_bare_rel_sigma_ge_2.3", agreement, 0.01)};
}

std::vector<CheckResult> criterion5() {
  std::vector<double> es;
  std::vector<double> discrepancy;
  for (int i = 0; i <= 45; ++i) {
    const double E = 0.05 + 0.01 * i;
    const auto p = problem_of(EckartBarrier{1.0, 1.0, 0.0}, E, -20.0, 20.0);
    const double exact = solve_scattering_exact(p).transmission;
    if (exact > 0.05) continue;
    es.push_back(E);
    discrepancy.push_back(rel(leading_transmission(barrier_integral(p)), exact));
  }
  double worst = 0.0;
  int violations = 0;
  for (std::size_t i = 0; i < discrepancy.size(); ++i) {
    worst = std::max(worst, discrepancy[i]);
    if (i + 1 < discrepancy.size() && discrepancy[i] > discrepancy[i + 1]) ++violations;
  }
  return {make(5, "bare_wkb_vs_exact_rel", worst, 0.25),
          make(5, "monotonicity_violations", violations, 0.0)};
}

std::vector<CheckResult> criterion6() {
  const std::vector<std::pair<PotentialModel, Interval>> barriers = {
      {SquareBarrier{1.0, 2.0, 0.0}, {-5.0, 5.0}},
      {GaussianBump{1.0, 1.0, 0.0}, {-10.0, 10.0}},
      {EckartBarrier{1.0, 1.0, 0.0}, {-20.0, 20.0}},
  };
  const char* names[] = {"square", "gaussian", "eckart"};
  std::vector<CheckResult> out;
  for (std::size_t b = 0; b < barriers.size(); ++b) {
    double defect = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double E = 0.1 + 1.9 * i / 49.0;
      const auto p = problem_of(barriers[b].first, E, barriers[b].second.lo, barriers[b].second.hi);
      const auto r = solve_scattering_exact(p);
      defect = std::max(defect, std::abs(r.transmission + r.reflection - 1.0));
    }
    out.push_back(make(6, std::string(names[b]) + "_unitarity_defect", defect, 1e-8));
  }
  const auto sq = problem_of(SquareBarrier{1.0, 2.0, 0.0}, 0.5, -5.0, 5.0);
  out.push_back(make(6, "square_vs_analytic_rel",
                     rel(solve_scattering_exact(sq).transmission,
                         square_barrier_transmission(1.0, 2.0, 0.5)),
                     1e-6));
  return out;
}

std::vector<CheckResult> criterion7() {
  std::vector<CheckResult> out;
  const auto ramp = problem_of(LinearRamp{0.0, 1.0}, 0.0, -60.0, 10.0);
  std::vector<double> xs;
  for (int i = 0; i <= 200; ++i) xs.push_back(-50.0 + 48.0 * i / 200.0);
  double ramp_error = 0.0;
  for (const auto& [w, v] : sample_effective_perturbation(ramp, xs, 0.0).samples) {
    ramp_error = std::max(ramp_error, std::abs(v * w * w - 5.0 / 36.0));
  }
  out.push_back(make(7, "ramp_vtilde_w2_abs_error", ramp_error, 1e-4));

  auto bump = [](double amplitude) {
    return problem_of(GaussianBump{amplitude, 1.0, 0.0}, 2.0, -12.0, 12.0);
  };
  const auto weak = bump(0.01);
  const std::complex<double> r = once_reflected_coefficient(weak);
  const double exact = solve_scattering_exact(weak).reflection;
  out.push_back(make(7, "once_reflected_vs_exact_rel", rel(std::norm(r), exact), 0.3));

  const double amps[] = {1e-3, 2e-3, 4e-3, 8e-3};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double a : amps) {
    const double x = std::log(a);
    const double y = std::log(std::abs(once_reflected_coefficient(bump(a))));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 4.0;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.push_back(make(7, "amplitude_slope_deviation", std::abs(slope - 1.0), 0.05));

  const auto picard = picard_amplitudes(weak, 1);
  out.push_back(make(7, "picard_once_vs_integral_rel",
                     std::abs(picard.reflection() - r) / std::abs(r), 1e-10));
  return out;
}

std::vector<CheckResult> criterion8() {
  const auto p = problem_of(GaussianBump{0.01, 1.0, 0.0}, 2.0, -12.0, 12.0);
  const double base = std::norm(once_reflected_coefficient(p));
  double worst = 0.0;
  for (double shift : {-5.0, 5.0}) {
    const double shifted = std::norm(once_reflected_coefficient(p, p.domain.lo + shift));
    worst = std::max(worst, rel(shifted, base));
  }
  return {make(8, "reference_shift_rel", worst, 1e-10)};
}

std::vector<CheckResult> criterion9() {
  RunConfig config;
  config.problem = problem_of(EckartBarrier{1.0, 1.0, 0.0}, 0.5, -20.0, 20.0);
  config.method = Method::Exact;
  config.scan = ScanSpec{0.1, 0.9, 16};
  const std::string first = render_table(run_scan(config), OutputFormat::Csv);
  const std::string second = render_table(run_scan(config), OutputFormat::Csv);
  return {make(9, "scan_rerun_bytes_differ", first == second ? 0.0 : 1.0, 0.0)};
}

}  // namespace

std::vector<CheckResult> run_criterion(int criterion) {
  switch (criterion) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    default: break;
  }
  throw Error(ErrorKind::Domain, "criterion must be in 1..9");
}

std::vector<CheckResult> run_verification() {
  std::vector<CheckResult> all;
  for (int c = 1; c <= kCriterionCount; ++c) {
    auto part = run_criterion(c);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void write_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  out << "criterion,check,value,threshold,status\n";
  for (const auto& c : checks) {
    out << c.criterion << ',' << c.check << ',' << format_number(c.value) << ','
        << format_number(c.threshold) << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
}

}  // namespace semiclassic
