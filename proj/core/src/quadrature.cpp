#include "semiclassic/quadrature.hpp"

#include <numbers>

namespace semiclassic::quad {

namespace {

constexpr int kMaxRule = 64;

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  static const std::vector<GaussLegendreRule> rules = [] {
    std::vector<GaussLegendreRule> r(kMaxRule + 1);
    for (int k = 1; k <= kMaxRule; ++k) r[k] = build_rule(k);
    return r;
  }();
  if (n < 1 || n > kMaxRule) {
    throw Error(ErrorKind::Domain, "Gauss-Legendre order must lie in [1, 64]");
  }
  return rules[n];
}

}  // namespace semiclassic::quad
