#pragma once

#include <cmath>
#include <complex>

#include "../core.hpp"

namespace qgraph {

enum class BesselKind { J1, Y0, Y1, K0, K1 };
enum class KelvinKind { ker, kei, ker1, kei1 };

namespace detail {

// Hankel amplitudes P, Q for order nu at x.  Optimal truncation.
inline void hankel_pq(int nu, double x, double& P, double& Q) {
  const double mu = 4.0 * nu * nu;
  P = 1.0;
  Q = 0.0;
  double term = 1.0, last = 1e300;
  for (int k = 1; k < 200; ++k) {
    term *= (mu - double(2 * k - 1) * (2 * k - 1)) / (k * 8.0 * x);
    double a = std::abs(term);
    if (a > last) break;
    last = a;
    // a_k / x^k enters P for even k with sign (-1)^{k/2}, Q for odd k with sign (-1)^{(k-1)/2}
    switch (k % 4) {
      case 0: P += term; break;
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
    }
    if (a < 1e-17) break;
  }
}

// cos and sin of x - phase*pi/4 without forming the shifted argument
inline void shifted_cs(double x, int eighths_num, double& c, double& s) {
  const double ph = eighths_num * pi / 4.0;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(ph), sp = std::sin(ph);
  c = cx * cp + sx * sp;
  s = sx * cp - cx * sp;
}

constexpr double bessel_series_limit = 16.0;

inline double j1_series(double x) {
  long double q = -(long double)x * x / 4.0L, term = x / 2.0L, sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / ((long double)k * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 5) break;
  }
  return double(sum);
}

inline double j0_series(double x) {
  long double q = -(long double)x * x / 4.0L, term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / ((long double)k * k);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 5) break;
  }
  return double(sum);
}

inline double y0_series(double x) {
  const long double q = -(long double)x * x / 4.0L;
  long double term = 1.0L, j0 = 1.0L, hsum = 0.0L, h = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / ((long double)k * k);
    h += 1.0L / k;
    j0 += term;
    hsum -= h * term;
    if (std::abs(term) * (h + 1) < 1e-22L && k > 5) break;
  }
  const long double lg = std::log((long double)x / 2.0L) + 0.57721566490153286060651209L;
  return double(2.0L / 3.14159265358979323846264338L * (lg * j0 + hsum));
}

inline double y1_series(double x) {
  const long double PI = 3.14159265358979323846264338L;
  const long double G = 0.57721566490153286060651209L;
  const long double q = -(long double)x * x / 4.0L;
  long double term = x / 2.0L;  // (x/2)^{2k+1} (-1)^k / (k!(k+1)!)
  long double j1 = term;
  long double hk = 0.0L, hk1 = 1.0L;  // H_k, H_{k+1}
  long double psum = (hk + hk1 - 2 * G) * term;
  for (int k = 1; k < 200; ++k) {
    term *= q / ((long double)k * (k + 1));
    hk += 1.0L / k;
    hk1 += 1.0L / (k + 1);
    j1 += term;
    long double add = (hk + hk1 - 2 * G) * term;
    psum += add;
    if (std::abs(add) < 1e-22L && k > 5) break;
  }
  long double r = -2.0L / (PI * x) + 2.0L / PI * std::log((long double)x / 2.0L) * j1 - psum / PI;
  return double(r);
}

// K0, K1 for small |z|
inline cplx k_series(int nu, cplx z) {
  const cplx q = z * z / 4.0, lz = std::log(z / 2.0);
  if (nu == 0) {
    cplx term = 1.0, i0 = 1.0, s = 0.0;
    double h = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / double(k * k);
      h += 1.0 / k;
      i0 += term;
      s += h * term;
      if (std::abs(term) * (h + 1) < 1e-18 * std::abs(i0)) break;
    }
    return -(lz + euler_gamma) * i0 + s;
  }
  cplx term = z / 2.0, i1 = term;
  double hk = 0.0, hk1 = 1.0;
  cplx s = (hk + hk1 - 2 * euler_gamma) * term;
  for (int k = 1; k < 60; ++k) {
    term *= q / double(k * (k + 1));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1);
    i1 += term;
    s += (hk + hk1 - 2 * euler_gamma) * term;
    if (std::abs(term) * (hk1 + 1) < 1e-18 * std::abs(i1)) break;
  }
  return 1.0 / z + lz * i1 - 0.5 * s;
}

// large |z|: sqrt(pi/2z) e^{-z} sum a_k(nu)/z^k
inline cplx k_asymptotic(int nu, cplx z) {
  const double mu = 4.0 * nu * nu;
  cplx term = 1.0, sum = 1.0;
  double last = 1e300;
  for (int k = 1; k < 400; ++k) {
    term *= (mu - double(2 * k - 1) * (2 * k - 1)) / (k * 8.0) / z;
    double a = std::abs(term);
    if (a > last) break;
    last = a;
    sum += term;
    if (a < 1e-17) break;
  }
  return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

/**
 * K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt on the steepest-descent
 * contour t = u + i v(u), where Im(z cosh t) is constant.  Trapezoid rule with
 * node halving; the integrand is analytic in a strip so it converges geometrically.
 */
inline cplx k_contour(int nu, cplx z) {
  double phi = std::arg(z);
  const bool conj = phi < 0;
  if (conj) {
    z = std::conj(z);
    phi = -phi;
  }
  const double sp = std::sin(phi), cp = std::cos(phi);
  auto f = [&](double u) -> cplx {
    cplx t, tp;
    if (phi < 1e-15) {
      t = u;
      tp = 1.0;
    } else if (u == 0.0) {
      t = 0.0;
      tp = cplx(1.0, -std::tan(phi / 2));
    } else {
      const double A = sp * std::cosh(u), B = cp * std::sinh(u);
      const double R = std::hypot(A, B);
      const double v = std::atan2(B, A) - std::acos(std::min(1.0, sp / R));
      const double num = sp * std::sinh(u) * std::cos(v) + cp * std::cosh(u) * std::sin(v);
      const double den = -sp * std::cosh(u) * std::sin(v) + cp * std::sinh(u) * std::cos(v);
      t = cplx(u, v);
      tp = cplx(1.0, -num / den);
    }
    cplx c = nu == 0 ? cplx(1.0) : std::cosh(double(nu) * t);
    return std::exp(-z * std::cosh(t)) * c * tp;
  };
  const double az = std::abs(z);
  double h = std::min(0.2, 0.4 / std::sqrt(az));
  if (phi > pi / 2) h *= 0.5;
  // sum over nodes u = offset + j*step
  auto sweep = [&](double offset, double step) {
    cplx s = 0.0;
    double u = offset;
    for (int j = 0; j < 100000; ++j, u += step) {
      cplx fu = f(u);
      s += fu;
      if (u > 1.0 && std::abs(fu) < 1e-18 * std::abs(s)) break;
    }
    return s;
  };
  cplx S = 0.5 * f(0.0) + sweep(h, h);
  cplx T = h * S;
  for (int level = 0; level < 6; ++level) {
    S += sweep(0.5 * h, h);
    h *= 0.5;
    cplx Tn = h * S;
    bool done = std::abs(Tn - T) < 1e-14 * std::abs(Tn);
    T = Tn;
    if (done) break;
  }
  return conj ? std::conj(T) : T;
}

}  // namespace detail

/** \brief K_0(z) on |arg z| < pi. */
inline cplx bessel_k0(cplx z) {
  if (z == 0.0) throw pole_error("bessel_k0: logarithmic singularity at 0");
  if (std::abs(std::arg(z)) >= pi) throw domain_error("bessel_k0: branch cut");
  const double a = std::abs(z);
  if (a < 0.3) return detail::k_series(0, z);
  if (a > 25.0) return detail::k_asymptotic(0, z);
  return detail::k_contour(0, z);
}

/** \brief K_1(z) on |arg z| < pi. */
inline cplx bessel_k1(cplx z) {
  if (z == 0.0) throw pole_error("bessel_k1: pole at 0");
  if (std::abs(std::arg(z)) >= pi) throw domain_error("bessel_k1: branch cut");
  const double a = std::abs(z);
  if (a < 0.3) return detail::k_series(1, z);
  if (a > 25.0) return detail::k_asymptotic(1, z);
  return detail::k_contour(1, z);
}

inline double bessel_k0(double x) { return bessel_k0(cplx(x, 0.0)).real(); }
inline double bessel_k1(double x) { return bessel_k1(cplx(x, 0.0)).real(); }

inline double bessel_j1(double x) {
  if (!(x > 0)) throw domain_error("bessel_j1: requires x > 0");
  if (x <= detail::bessel_series_limit) return detail::j1_series(x);
  double P, Q, c, s;
  detail::hankel_pq(1, x, P, Q);
  detail::shifted_cs(x, 3, c, s);
  return std::sqrt(2.0 / (pi * x)) * (P * c - Q * s);
}

inline double bessel_j0(double x) {
  if (x < 0) x = -x;
  if (x <= detail::bessel_series_limit) return detail::j0_series(x);
  double P, Q, c, s;
  detail::hankel_pq(0, x, P, Q);
  detail::shifted_cs(x, 1, c, s);
  return std::sqrt(2.0 / (pi * x)) * (P * c - Q * s);
}

inline double bessel_y0(double x) {
  if (x == 0.0) throw pole_error("bessel_y0: logarithmic singularity at 0");
  if (!(x > 0)) throw domain_error("bessel_y0: requires x > 0");
  if (x <= detail::bessel_series_limit) return detail::y0_series(x);
  double P, Q, c, s;
  detail::hankel_pq(0, x, P, Q);
  detail::shifted_cs(x, 1, c, s);
  return std::sqrt(2.0 / (pi * x)) * (P * s + Q * c);
}

inline double bessel_y1(double x) {
  if (x == 0.0) throw pole_error("bessel_y1: pole at 0");
  if (!(x > 0)) throw domain_error("bessel_y1: requires x > 0");
  if (x <= detail::bessel_series_limit) return detail::y1_series(x);
  double P, Q, c, s;
  detail::hankel_pq(1, x, P, Q);
  detail::shifted_cs(x, 3, c, s);
  return std::sqrt(2.0 / (pi * x)) * (P * s + Q * c);
}

/** \brief Dispatcher; J and Y kinds only on the positive real axis. */
inline cplx bessel(BesselKind kind, cplx z) {
  if (z == 0.0) throw pole_error("bessel: singular at z = 0");
  switch (kind) {
    case BesselKind::K0: return bessel_k0(z);
    case BesselKind::K1: return bessel_k1(z);
    default: break;
  }
  if (z.imag() != 0.0 || !(z.real() > 0))
    throw domain_error("bessel: J and Y kinds need positive real argument");
  const double x = z.real();
  switch (kind) {
    case BesselKind::J1: return bessel_j1(x);
    case BesselKind::Y0: return bessel_y0(x);
    default: return bessel_y1(x);
  }
}

/** \brief Kelvin functions from K_0, K_1 at x e^{i pi/4}. */
inline double kelvin(KelvinKind kind, double x) {
  if (!(x > 0)) throw invalid_argument("kelvin: requires x > 0");
  const cplx z = std::polar(x, pi / 4);
  switch (kind) {
    case KelvinKind::ker: return bessel_k0(z).real();
    case KelvinKind::kei: return bessel_k0(z).imag();
    case KelvinKind::ker1: return bessel_k1(z).imag();
    default: return -bessel_k1(z).real();
  }
}

}  // namespace qgraph
