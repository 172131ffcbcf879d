#include "semiclassic/special_fn.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "semiclassic/error.hpp"
#include "semiclassic/quadrature.hpp"

namespace semiclassic {

namespace {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;
using Float140 = mp::number<mp::cpp_bin_float<140>>;

using std::numbers::pi;

template <class Real>
struct AiryConstants {
  Real c1;  // Ai(0)
  Real c2;  // -Ai'(0)
  Real sqrt3;
};

template <class Real>
const AiryConstants<Real>& airy_constants() {
  static const AiryConstants<Real> k = [] {
    using boost::math::tgamma;
    using std::pow;
    using std::sqrt;
    const Real three(3);
    AiryConstants<Real> c;
    c.c1 = Real(1) / (pow(three, Real(2) / 3) * tgamma(Real(2) / 3));
    c.c2 = Real(1) / (pow(three, Real(1) / 3) * tgamma(Real(1) / 3));
    c.sqrt3 = sqrt(three);
    return c;
  }();
  return k;
}

template <class Real>
AiryPair airy_series(double zd) {
  using std::abs;
  const auto& k = airy_constants<Real>();
  const Real z(zd);
  const Real z3 = z * z * z;
  const Real eps = std::numeric_limits<Real>::epsilon();

  // f = sum a_k z^{3k}, g = sum b_k z^{3k+1} and their derivatives.
  Real f_term(1), f_sum(1);
  Real g_term = z, g_sum = z;
  Real fp_term = z * z / 2, fp_sum = fp_term;
  Real gp_term(1), gp_sum(1);
  for (int j = 1; j < 2000; ++j) {
    const Real jj(j);
    f_term *= z3 / ((3 * jj - 1) * (3 * jj));
    g_term *= z3 / ((3 * jj) * (3 * jj + 1));
    if (j >= 2) fp_term *= z3 / ((3 * jj - 3) * (3 * jj - 1));
    gp_term *= z3 / ((3 * jj - 2) * (3 * jj));
    f_sum += f_term;
    g_sum += g_term;
    if (j >= 2) fp_sum += fp_term;
    gp_sum += gp_term;
    const bool done = abs(f_term) <= eps * abs(f_sum) && abs(g_term) <= eps * abs(g_sum) &&
                      abs(fp_term) <= eps * abs(fp_sum) && abs(gp_term) <= eps * abs(gp_sum);
    if (done && j > 2) break;
  }
  AiryPair out;
  out.ai = static_cast<double>(k.c1 * f_sum - k.c2 * g_sum);
  out.bi = static_cast<double>(k.sqrt3 * (k.c1 * f_sum + k.c2 * g_sum));
  out.ai_prime = static_cast<double>(k.c1 * fp_sum - k.c2 * gp_sum);
  out.bi_prime = static_cast<double>(k.sqrt3 * (k.c1 * fp_sum + k.c2 * gp_sum));
  return out;
}

// Coefficients of the large-argument Airy expansions.
double airy_u(int k) {
  double u = 1.0;
  for (int j = 1; j <= k; ++j) {
    u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
  }
  return u;
}

double airy_v(int k) {
  if (k == 0) return 1.0;
  return -(6.0 * k + 1.0) / (6.0 * k - 1.0) * airy_u(k);
}

// sum_k sgn^k c_k / zeta^k with optional fixed length or stop at the
// smallest term. `stride`/`offset` pick the even or odd subsequence.
template <class Coef>
double asymptotic_sum(Coef coef, double zeta, double sgn, int offset, int stride, int terms) {
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  const int limit = terms > 0 ? terms : 60;
  for (int i = 0; i < limit; ++i) {
    const int k = offset + stride * i;
    const double term = std::pow(sgn, i) * coef(k) / std::pow(zeta, k);
    if (terms == 0) {
      if (std::abs(term) >= prev) break;
      prev = std::abs(term);
    }
    sum += term;
    if (terms == 0 && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// sum_k (x/2)^{2k} / (k! Gamma(k + nu + 1))
long double scaled_bessel_series(long double nu, long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L / std::tgamma(nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (std::abs(term) <= 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

// Large-argument expansion coefficient a_k(nu).
double bessel_a(double nu, int k) {
  double a = 1.0;
  const double mu = 4.0 * nu * nu;
  for (int j = 1; j <= k; ++j) {
    a *= (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j);
  }
  return a;
}

// Returns (sum_k (-1)^k a_k / x^k, sum_k a_k / x^k), truncated at the
// smallest term.
std::pair<double, double> bessel_asymptotic_sums(double nu, double x) {
  double alt = 0.0, pos = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    const double t = bessel_a(nu, k) / std::pow(x, k);
    if (std::abs(t) >= prev && k > 1) break;
    prev = std::abs(t);
    alt += (k % 2 == 0 ? 1.0 : -1.0) * t;
    pos += t;
    if (std::abs(t) < 1e-18) break;
  }
  return {alt, pos};
}

}  // namespace

AiryPair airy(double z) {
  if (!std::isfinite(z)) throw Error(ErrorKind::Domain, "airy: non-finite argument");
  const double az = std::abs(z);
  if (az > kAirySeriesLimit) {
    std::ostringstream os;
    os << "airy: |z| = " << az << " exceeds the series range " << kAirySeriesLimit
       << "; use airy_asymptotic";
    throw Error(ErrorKind::Range, os.str());
  }
  if (az <= 2.5) return airy_series<long double>(z);
  if (az <= 10.0) return airy_series<Float50>(z);
  return airy_series<Float140>(z);
}

AiryPair airy_asymptotic(double z, int terms) {
  if (!std::isfinite(z)) throw Error(ErrorKind::Domain, "airy_asymptotic: non-finite argument");
  if (std::abs(z) < kAiryAsymptoticMin) {
    std::ostringstream os;
    os << "airy_asymptotic: |z| = " << std::abs(z) << " below " << kAiryAsymptoticMin
       << ", expansion is not accurate there";
    throw Error(ErrorKind::Accuracy, os.str());
  }
  if (terms < 0) throw Error(ErrorKind::Domain, "airy_asymptotic: negative term count");

  const double x = std::abs(z);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double q = std::pow(x, 0.25);
  const double sqrtpi = std::sqrt(pi);
  AiryPair out;
  if (z > 0.0) {
    const double su_alt = asymptotic_sum(airy_u, zeta, -1.0, 0, 1, terms);
    const double sv_alt = asymptotic_sum(airy_v, zeta, -1.0, 0, 1, terms);
    const double su = asymptotic_sum(airy_u, zeta, 1.0, 0, 1, terms);
    const double sv = asymptotic_sum(airy_v, zeta, 1.0, 0, 1, terms);
    const double decay = std::exp(-zeta);
    const double grow = std::exp(zeta);
    out.ai = decay / (2.0 * sqrtpi * q) * su_alt;
    out.ai_prime = -q * decay / (2.0 * sqrtpi) * sv_alt;
    out.bi = grow / (sqrtpi * q) * su;
    out.bi_prime = q * grow / sqrtpi * sv;
  } else {
    // Even/odd subsequences with alternating signs; a fixed term count is
    // shared between the two.
    const int even_terms = terms > 0 ? (terms + 1) / 2 : 0;
    const int odd_terms = terms > 0 ? terms / 2 : 0;
    const double ue = asymptotic_sum(airy_u, zeta, -1.0, 0, 2, even_terms);
    const double uo = terms == 1 ? 0.0 : asymptotic_sum(airy_u, zeta, -1.0, 1, 2, odd_terms);
    const double ve = asymptotic_sum(airy_v, zeta, -1.0, 0, 2, even_terms);
    const double vo = terms == 1 ? 0.0 : asymptotic_sum(airy_v, zeta, -1.0, 1, 2, odd_terms);
    const double c = std::cos(zeta - pi / 4.0);
    const double s = std::sin(zeta - pi / 4.0);
    out.ai = (c * ue + s * uo) / (sqrtpi * q);
    out.bi = (-s * ue + c * uo) / (sqrtpi * q);
    out.ai_prime = q / sqrtpi * (s * ve - c * vo);
    out.bi_prime = q / sqrtpi * (c * ve + s * vo);
  }
  return out;
}

double bessel_i(double nu, double x) {
  if (!(x >= 0.0)) throw Error(ErrorKind::Domain, "bessel_i: argument must be non-negative");
  if (x <= 12.0) {
    if (x == 0.0) {
      if (nu == 0.0) return 1.0;
      if (nu > 0.0) return 0.0;
      return std::numeric_limits<double>::infinity();
    }
    const long double half = 0.5L * x;
    return static_cast<double>(std::pow(half, static_cast<long double>(nu)) *
                               scaled_bessel_series(nu, x));
  }
  const auto [alt, pos] = bessel_asymptotic_sums(nu, x);
  (void)pos;
  return std::exp(x) / std::sqrt(2.0 * pi * x) * alt;
}

AiryPair airy_bessel_form(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorKind::Domain, "airy_bessel_form: representation requires z > 0");
  }
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double sqrt3 = std::sqrt(3.0);
  AiryPair out;
  if (zeta <= 12.0) {
    // (zeta/2)^nu folded with the sqrt(z) or z prefactor:
    // (zeta/2)^nu sqrt(z) = 3^{-nu} z^{(3 nu + 1)/2},  (zeta/2)^nu z = 3^{-nu} z^{(3 nu + 2)/2}.
    const long double zl = z;
    const long double zt = zeta;
    const long double third = 1.0L / 3.0L;
    const long double s_m13 = scaled_bessel_series(-third, zt);
    const long double s_p13 = scaled_bessel_series(third, zt);
    const long double s_m23 = scaled_bessel_series(-2.0L * third, zt);
    const long double s_p23 = scaled_bessel_series(2.0L * third, zt);
    const long double c3 = std::cbrt(3.0L);
    // sqrt(z) I_{-1/3} = 3^{1/3} S_{-1/3},  sqrt(z) I_{1/3} = 3^{-1/3} z S_{1/3}
    const long double im13 = c3 * s_m13;
    const long double ip13 = zl / c3 * s_p13;
    // z I_{-2/3} = 3^{2/3} S_{-2/3},  z I_{2/3} = 3^{-2/3} z^2 S_{2/3}
    const long double im23 = c3 * c3 * s_m23;
    const long double ip23 = zl * zl / (c3 * c3) * s_p23;
    out.ai = static_cast<double>((im13 - ip13) / 3.0L);
    out.bi = static_cast<double>((im13 + ip13) / std::sqrt(3.0L));
    out.ai_prime = static_cast<double>((ip23 - im23) / 3.0L);
    out.bi_prime = static_cast<double>((im23 + ip23) / std::sqrt(3.0L));
    return out;
  }
  // I_{-nu} - I_{nu} = (2/pi) sin(nu pi) K_nu is exponentially small here and
  // is evaluated through the K expansion; the sum uses the I expansion.
  const auto [alt13, pos13] = bessel_asymptotic_sums(1.0 / 3.0, zeta);
  const auto [alt23, pos23] = bessel_asymptotic_sums(2.0 / 3.0, zeta);
  const double k13 = std::sqrt(pi / (2.0 * zeta)) * std::exp(-zeta) * pos13;
  const double k23 = std::sqrt(pi / (2.0 * zeta)) * std::exp(-zeta) * pos23;
  const double i_sum13 = 2.0 * std::exp(zeta) / std::sqrt(2.0 * pi * zeta) * alt13;
  const double i_sum23 = 2.0 * std::exp(zeta) / std::sqrt(2.0 * pi * zeta) * alt23;
  out.ai = std::sqrt(z / 3.0) / pi * k13;
  out.ai_prime = -z / (pi * sqrt3) * k23;
  out.bi = std::sqrt(z / 3.0) * i_sum13;
  out.bi_prime = z / sqrt3 * i_sum23;
  return out;
}

AiryPair airy_auto(double z) {
  if (std::abs(z) <= kAirySwitchover) return airy(z);
  return airy_asymptotic(z);
}

double airy_laplace_contour(double z) {
  if (!(std::abs(z) <= 2.0)) {
    throw Error(ErrorKind::Domain, "airy_laplace_contour: validation range is |z| <= 2");
  }
  const double cutoff = std::cbrt(120.0 * pi);  // t^3/3 = 40 pi
  auto integrand = [z](double t) { return std::cos(z * t + t * t * t / 3.0); };
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  opt.initial_panels = 64;
  const double body = quad::integrate(integrand, 0.0, cutoff, opt).value;

  // Tail by repeated integration by parts: int_T^inf e^{i phi} dt =
  // -e^{i phi(T)}/(i q(T)) sum_n g_n(T), q = phi' = z + t^2.
  const double t = cutoff;
  const double q = z + t * t;
  const double q1 = 2.0 * t;
  const double q2 = 2.0;
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  const cd g0 = 1.0;
  const cd g1 = -i * q1 / (q * q);
  const cd g2 = q2 / (q * q * q) - 3.0 * q1 * q1 / std::pow(q, 4);
  const cd g3 = i * (-10.0 * q1 * q2 / std::pow(q, 5) + 15.0 * q1 * q1 * q1 / std::pow(q, 6));
  const double phase = z * t + t * t * t / 3.0;
  const cd tail = -std::exp(i * phase) / (i * q) * (g0 + g1 + g2 + g3);
  return (body + tail.real()) / pi;
}

double bessel_transform_check(double z, const std::function<double(double)>& psi) {
  if (!(z < -0.5)) throw Error(ErrorKind::Domain, "bessel_transform_check: requires z < -0.5");
  const double tau = 2.0 / 3.0 * std::pow(-z, 1.5);
  auto phi = [&](double t) {
    const double zz = -std::pow(1.5 * t, 2.0 / 3.0);
    return psi(zz) / std::sqrt(-zz);
  };
  const double h = 1e-2 * std::min(1.0, tau);
  double f[7];
  for (int j = -3; j <= 3; ++j) f[j + 3] = phi(tau + j * h);
  const double d1 = (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60.0 * h);
  const double d2 = (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] -
                     27.0 * f[5] + 2.0 * f[6]) /
                    (180.0 * h * h);
  return tau * tau * d2 + tau * d1 + (tau * tau - 1.0 / 9.0) * f[3];
}

double bessel_transform_check(double z) {
  return bessel_transform_check(z, [](double x) { return airy(x).ai; });
}

std::pair<double, double> sector_range(ContourSector sector) {
  switch (sector) {
    case ContourSector::C1: return {-pi / 6.0, pi / 6.0};
    case ContourSector::C2: return {pi / 2.0, 5.0 * pi / 6.0};
    case ContourSector::C3: return {7.0 * pi / 6.0, 3.0 * pi / 2.0};
  }
  return {0.0, 0.0};
}

bool integrand_decays(double angle) { return std::cos(3.0 * angle) > 0.0; }

}  // namespace semiclassic
