#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "semiclassic/error.hpp"

namespace semiclassic::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  int max_intervals = 4000;
  int initial_panels = 1;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
auto kronrod15(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kronrod = fc * kronrod_weights[7];
  T gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_nodes[j];
    const T sum = f(c - dx) + f(c + dx);
    kronrod += sum * kronrod_weights[j];
    if (j % 2 == 1) gauss += sum * gauss_weights[j / 2];
  }
  kronrod *= h;
  gauss *= h;
  return Panel<T>{a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) integration. The integrand may
/// return double or std::complex<double>. Throws Error{Numerical} when the
/// interval budget runs out before the tolerance is met.
template <class F>
auto integrate(F f, double a, double b, const Options& opt = {}) {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) return out;
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<detail::Panel<T>> heap;
  const int n0 = std::max(1, opt.initial_panels);
  T total{};
  double err = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    auto p = detail::kronrod15(f, lo, hi);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int count = n0;
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (count >= opt.max_intervals) {
      throw Error(ErrorKind::Numerical, "adaptive quadrature did not converge");
    }
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at double resolution
    heap.pop();
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (err < 0.0) {
      // Guard against cancellation drift in the running sum.
      err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  // Re-sum to avoid accumulated drift in the running total.
  T resum{};
  double reerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    reerr += heap.top().error;
    heap.pop();
  }
  out.value = resum * sign;
  out.error = reerr;
  out.intervals = count;
  return out;
}

/// Integrate over [a, b] with the substitutions x = a + s^2 (left half) and
/// x = b - s^2 (right half). Removes sqrt-type behaviour at either endpoint
/// and leaves smooth integrands smooth.
template <class F>
auto integrate_sqrt_ends(F f, double a, double b, const Options& opt = {}) {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) return out;
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  const double half = 0.5 * (b - a);
  const double smax = std::sqrt(half);
  auto left = [&](double s) { return f(a + s * s) * (2.0 * s); };
  auto right = [&](double s) { return f(b - s * s) * (2.0 * s); };
  auto rl = integrate(left, 0.0, smax, opt);
  auto rr = integrate(right, 0.0, smax, opt);
  out.value = (rl.value + rr.value) * sign;
  out.error = rl.error + rr.error;
  out.intervals = rl.intervals + rr.intervals;
  return out;
}

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

/// Fixed Gauss-Legendre quadrature of f over [a, b].
template <class F>
auto fixed_gauss_legendre(F f, double a, double b, int n = 20) {
  const auto& rule = gauss_legendre(n);
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += f(c + h * rule.nodes[i]) * rule.weights[i];
  }
  return sum * h;
}

}  // namespace semiclassic::quad
