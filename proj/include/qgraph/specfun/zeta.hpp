#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "../core.hpp"
#include "bernoulli.hpp"
#include "gamma.hpp"

namespace qgraph {

namespace detail {

/**
 * Euler-Maclaurin for sum_{n>=0} (a+n)^{-s} - [pole part], starting the
 * remainder at a+N.  With subtract_pole the term 1/(s-1) is removed
 * analytically, which keeps s near 1 free of cancellation.
 */
inline cplx zeta_em(cplx s, double a, bool subtract_pole) {
  const double as = std::abs(s);
  const int N = 12 + static_cast<int>(as);
  CompensatedSum<cplx> sum;
  for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(a + n));
  const double x = a + N;
  const double lx = std::log(x);
  const cplx sm1 = s - 1.0;
  cplx xs = std::exp(-s * lx);  // x^{-s}
  if (subtract_pole) {
    // x^{1-s}/(s-1) - 1/(s-1) = expm1(-(s-1) log x)/(s-1)
    sum += (std::abs(sm1) == 0.0) ? cplx(-lx) : expm1_c(-sm1 * lx) / sm1;
  } else {
    sum += x * xs / sm1;
  }
  sum += 0.5 * xs;
  const auto& b = bernoulli_doubles();
  cplx rising = s;            // s(s+1)...(s+2k-2)
  cplx pw = xs / x;           // x^{-s-2k+1}
  double fact = 2.0;          // (2k)!
  for (int k = 1; k <= 28; ++k) {
    cplx term = b[2 * k] / fact * rising * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    pw /= x * x;
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return sum.value();
}

}  // namespace detail

/** \brief Riemann zeta for complex s != 1. */
inline cplx riemann_zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw pole_error("riemann_zeta: pole at s = 1");
  if (s.imag() == 0.0) {
    double x = s.real();
    if (x == 0.0) return -0.5;
    if (x < 0.0 && x == std::floor(x) && std::fmod(-x, 2.0) == 0.0) return 0.0;
  }
  if (s.real() < 0.5) {
    cplx one_s = 1.0 - s;
    cplx lg = s * std::log(2.0) + (s - 1.0) * std::log(pi) + lgamma_c(one_s);
    return std::exp(lg) * std::sin(0.5 * pi * s) * riemann_zeta(one_s);
  }
  return detail::zeta_em(s, 1.0, false);
}

inline double riemann_zeta(double s) { return riemann_zeta(cplx(s, 0.0)).real(); }

/** \brief zeta(s) - 1/(s-1), regular at s = 1 (value gamma there). */
inline cplx zeta_regular(cplx s) {
  if (s.real() < 0.5) return riemann_zeta(s) - 1.0 / (s - 1.0);
  return detail::zeta_em(s, 1.0, true);
}

/** \brief Hurwitz zeta sum_{n>=0} (n+a)^{-s}, Re s > 1, a > 0. */
inline cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0)) throw invalid_argument("hurwitz_zeta: a must be positive");
  if (!(s.real() > 1.0)) throw domain_error("hurwitz_zeta: requires Re s > 1");
  return detail::zeta_em(s, a, false);
}

inline double hurwitz_zeta(double s, double a) { return hurwitz_zeta(cplx(s, 0.0), a).real(); }

/**
 * \brief Riemann zeta via the alternating eta series with Borwein acceleration.
 *
 * Independent path for Re s > 0, s != 1.
 */
inline cplx riemann_zeta_eta(cplx s, int n = 60) {
  if (!(s.real() > 0.0)) throw domain_error("riemann_zeta_eta: requires Re s > 0");
  if (s == cplx(1.0, 0.0)) throw pole_error("riemann_zeta_eta: pole at s = 1");
  std::vector<long double> d(n + 1);
  long double sum = 0.0L, term = 1.0L / n;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= (long double)(n + i - 1) * (n - i + 1) * 4.0L / ((2.0L * i - 1) * (2.0L * i));
    sum += term;
    d[i] = n * sum;
  }
  std::complex<long double> acc = 0.0L;
  std::complex<long double> sl(s.real(), s.imag());
  for (int k = 0; k < n; ++k) {
    std::complex<long double> t = (d[k] - d[n]) * std::exp(-sl * std::log((long double)(k + 1)));
    acc += (k % 2 == 0) ? t : -t;
  }
  acc /= -d[n];
  std::complex<long double> fac = 1.0L - std::exp((1.0L - sl) * std::log(2.0L));
  auto r = acc / fac;
  return cplx(double(r.real()), double(r.imag()));
}

}  // namespace qgraph
