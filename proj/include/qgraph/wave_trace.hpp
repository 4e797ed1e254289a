#pragma once

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>

#include "arithmetic.hpp"
#include "core.hpp"
#include "quadrature.hpp"
#include "specfun/bernoulli.hpp"
#include "specfun/expint.hpp"
#include "specfun/gamma.hpp"
#include "specfun/jacobi.hpp"

namespace qgraph {

namespace detail {

/**
 * Sum of d(n) w(n) for a weight decaying at least geometrically.  Stops once
 * the current weight, scaled by a 2 sqrt(n) multiplicity bound and the
 * geometric ratio of the last two weights, certifies the remainder.
 */
template <class W>
EvalResult divisor_weighted_sum(W&& w, const DivisorTable& table, const SeriesControl& ctrl,
                                const char* who) {
  ctrl.validate();
  CompensatedSum<cplx> s;
  cplx prev = 0.0;
  std::size_t small = 0;
  for (std::size_t n = 1;; ++n) {
    if (n > ctrl.max_terms)
      throw convergence_failure(std::string(who) + ": max_terms exceeded",
                                {s.value(), std::abs(prev), n - 1, false});
    if (n > table.limit()) throw out_of_range(std::string(who) + ": divisor table too small");
    cplx wn = w(double(n));
    s += double(table[n]) * wn;
    const double r = n > 1 && std::abs(prev) > 0 ? std::abs(wn) / std::abs(prev) : 1.0;
    const double bound = r < 1.0 ? 2.0 * std::sqrt(double(n) + 1) * std::abs(wn) * r / (1.0 - r)
                                 : std::abs(wn) * double(n);
    const double scale = std::max(1.0, std::abs(s.value()));
    prev = wn;
    if (bound < 0.01 * ctrl.tol * scale) {
      if (++small >= ctrl.consecutive_small) return {s.value(), bound, n, true};
    } else {
      small = 0;
    }
  }
}

}  // namespace detail

/** \brief Theta(t) = sum d(n) e^{-nt}. */
inline EvalResult theta_direct(double t, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("theta_direct: requires t > 0");
  return detail::divisor_weighted_sum([t](double n) { return cplx(std::exp(-n * t)); }, table,
                                      ctrl, "theta_direct");
}

/** \brief Lambert form sum 1/(e^{nt} - 1). */
inline double theta_lambert(double t, double tol = 1e-16) {
  if (!(t > 0)) throw invalid_argument("theta_lambert: requires t > 0");
  CompensatedSum<double> s;
  for (std::size_t n = 1; n < 100000000; ++n) {
    double term = 1.0 / std::expm1(double(n) * t);
    s += term;
    if (term * (1.0 / -std::expm1(-t)) < tol * s.value()) break;
  }
  return s.value();
}

/** \brief Weyl part -ln t/t + gamma/t + 1/4. */
inline double theta_weyl(double t) {
  if (!(t > 0)) throw invalid_argument("theta_weyl: requires t > 0");
  return (-std::log(t) + euler_gamma) / t + 0.25;
}

/**
 * \brief Partial sum through order M of the small-t expansion of Theta.
 *
 * The series is divergent.  M is capped at 30 in double precision; wider
 * types may go up to the exact Bernoulli table.
 */
template <class Real = double>
Real theta_asymptotic(Real t, unsigned M) {
  if (!(t > 0 && t < 1)) throw invalid_argument("theta_asymptotic: requires 0 < t < 1");
  const unsigned cap = std::is_same_v<Real, double> ? 30u : unsigned(detail::bernoulli_exact_limit - 1);
  if (M > cap) throw invalid_argument("theta_asymptotic: order too large for this type");
  using std::log;
  const Real g = boost::math::constants::euler<Real>();
  Real sum = (-log(t) + g) / t + Real(1) / 4;
  Real fact = 1, pw = 1;  // (m+1)!, (-t)^m
  for (unsigned m = 1; m <= M; ++m) {
    fact *= Real(m + 1);
    pw *= -t;
    if ((m + 1) % 2 == 1) continue;
    Real b = bernoulli_as<Real>(m + 1);
    sum += b * b / (Real(m + 1) * fact) * pw;
  }
  return sum;
}

/** \brief Theta(t) in an arbitrary floating type, for expansion studies. */
template <class Real>
Real theta_direct_as(Real t, const DivisorTable& table, Real tol) {
  using std::exp;
  Real s = 0;
  for (std::size_t n = 1; n <= table.limit(); ++n) {
    Real w = exp(-Real(n) * t);
    s += Real(table[n]) * w;
    if (w * Real(1000) < tol * s) return s;
  }
  throw out_of_range("theta_direct_as: divisor table too small");
}

namespace detail {

// splice point for the large-x expansion of the bracket
inline std::size_t po_splice(double t) {
  return std::max<std::size_t>(1000, std::size_t(std::ceil(1000.0 * t / (4 * pi * pi))));
}

// (2/t) sum_{n>N} d(n) g(4 pi^2 n/t) from the large-x expansion
inline double theta_po_tail(double t, std::size_t N, const DivisorTable& table) {
  const auto& T = table.tails(N);
  const double y = t / (4 * pi * pi);
  double sum = 0.0, c = 2.0, yp = y * y;  // 2 (2m+1)!, y^{2m+2}
  for (int m = 0; 2 * m + 2 <= DivisorTable::max_tail_order; ++m) {
    double term = c * yp * T[2 * m + 2];
    sum -= term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    c *= double(2 * m + 2) * (2 * m + 3);
    yp *= y * y;
  }
  return 2.0 / t * sum;
}

}  // namespace detail

/** \brief Periodic-orbit part (2/t) sum d(n) [e^x E1(x) - e^{-x} Ei(x)], x = 4 pi^2 n/t. */
inline EvalResult theta_po(double t, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("theta_po: requires t > 0");
  ctrl.validate();
  const std::size_t N = detail::po_splice(t);
  if (N > table.limit()) throw out_of_range("theta_po: divisor table too small");
  CompensatedSum<double> s;
  for (std::size_t n = N; n >= 1; --n) s += double(table[n]) * po_bracket(4 * pi * pi * n / t);
  double v = 2.0 / t * s.value() + detail::theta_po_tail(t, N, table);
  return {v, 1e-15 * std::max(1.0, std::abs(v)), N, true};
}

/**
 * \brief Periodic-orbit part from the Fourier-cosine integrals
 * int_0^inf k cos(4 pi^2 k/t)/(k^2+n^2) dk, computed by oscillatory quadrature
 * for n <= n_quad and by the bracket beyond.
 */
inline EvalResult theta_po_integral(double t, const DivisorTable& table, std::size_t n_quad = 20,
                                    const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("theta_po_integral: requires t > 0");
  const double a = 4 * pi * pi / t;
  const double half = pi / a;
  const std::size_t N = detail::po_splice(t);
  CompensatedSum<double> s;
  double err = 0.0;
  for (std::size_t n = 1; n <= std::min(n_quad, N); ++n) {
    const double nn = double(n);
    auto f = [a, nn](double k) { return k * std::cos(a * k) / (k * k + nn * nn); };
    auto r = quad::integrate_oscillatory(f, 0.0, half / 2, half, 1e-10);
    r.error += 1e-10 * std::abs(r.value);
    s += 2.0 * double(table[n]) * r.value;
    err += r.error;
  }
  for (std::size_t n = N; n > n_quad; --n) s += double(table[n]) * po_bracket(a * n);
  double v = 2.0 / t * s.value() + detail::theta_po_tail(t, N, table);
  return {v, err, N, err < ctrl.tol};
}

/** \brief Theta(t,k) = sum d(n) e^{-(n+k)t}, summed directly. */
inline EvalResult theta_generalized(double t, cplx k, const DivisorTable& table,
                                    const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("theta_generalized: requires t > 0");
  if (!(k.real() > -1.0)) throw domain_error("theta_generalized: requires Re k > -1");
  return detail::divisor_weighted_sum([t, k](double n) { return std::exp(-(n + k) * t); }, table,
                                      ctrl, "theta_generalized");
}

/** \brief e^{-kt} Theta(t). */
inline EvalResult theta_generalized_factorized(double t, cplx k, const DivisorTable& table,
                                               const SeriesControl& ctrl = {}) {
  if (!(k.real() > -1.0)) throw domain_error("theta_generalized: requires Re k > -1");
  auto r = theta_direct(t, table, ctrl);
  r.value *= std::exp(-k * t);
  return r;
}

/** \brief Double expansion of Theta(t,k) in t with coefficients a_l(k), through t^order. */
inline cplx theta_generalized_asymptotic(double t, cplx k, unsigned order) {
  if (!(t > 0 && t < 1)) throw invalid_argument("theta_generalized_asymptotic: requires 0 < t < 1");
  if (order > 30) throw invalid_argument("theta_generalized_asymptotic: order too large");
  const double lt = std::log(t);
  cplx sum = (-lt + euler_gamma) / t;
  std::vector<double> c(order + 1);  // B_{m+1}^2 / ((m+1)(m+1)!)
  double fact = 1.0;
  for (unsigned m = 0; m <= order; ++m) {
    fact *= double(m + 1);
    double b = bernoulli(m + 1);
    c[m] = b * b / (double(m + 1) * fact);
  }
  double tp = 1.0;
  for (unsigned l = 0; l <= order; ++l) {
    cplx al = 0.0, kn = 1.0;
    double nf = 1.0;
    for (unsigned n = 0; n <= l; ++n) {
      if (n > 0) {
        kn *= k;
        nf *= double(n);
      }
      al += c[l - n] * kn / nf;
    }
    const cplx kl1 = std::pow(k, double(l + 1));
    const double f1 = std::tgamma(double(l + 2));
    const double sgn = (l % 2) ? -1.0 : 1.0;
    sum += sgn * kl1 / f1 * tp * lt;
    sum += sgn * (al - euler_gamma * kl1 / f1) * tp;
    tp *= t;
  }
  return sum;
}

/** \brief sum d(n) e^{-(n^2+k^2)t}, divisor path. */
inline EvalResult heat_trace(double t, cplx k, const DivisorTable& table,
                             const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("heat_trace: requires t > 0");
  auto r = detail::divisor_weighted_sum([t](double n) { return cplx(std::exp(-n * n * t)); }, table,
                                        ctrl, "heat_trace");
  r.value *= std::exp(-k * k * t);
  return r;
}

/** \brief Same trace as e^{-k^2 t} sum_m omega(m^2 t/pi). */
inline EvalResult heat_trace_omega(double t, cplx k, const SeriesControl& ctrl = {}) {
  if (!(t > 0)) throw invalid_argument("heat_trace_omega: requires t > 0");
  ctrl.validate();
  CompensatedSum<double> s;
  std::size_t m = 1;
  for (;; ++m) {
    if (m > ctrl.max_terms)
      throw convergence_failure("heat_trace_omega: max_terms exceeded", {s.value(), 0.0, m, false});
    double w = jacobi_omega(double(m) * m * t / pi);
    s += w;
    // omega(x) ~ e^{-pi x} for large x; geometric tail
    if (m * m * t > 1.0 && w < 1e-3 * ctrl.tol * std::max(1.0, s.value())) break;
  }
  return {std::exp(-k * k * t) * s.value(), 1e-16 * s.value(), m, true};
}

/** \brief Small-t expansion of the heat trace through t-power index `order`. */
inline cplx heat_asymptotic(double t, cplx k, unsigned order) {
  if (!(t > 0 && t < 1)) throw invalid_argument("heat_asymptotic: requires 0 < t < 1");
  const double sp4 = std::sqrt(pi) / 4.0, lt = std::log(t);
  const double c2 = 3.0 * euler_gamma - 2.0 * std::log(2.0);
  cplx sum = 0.0, kp = 1.0;
  double nf = 1.0;
  for (unsigned n = 0; n <= order; ++n) {
    if (n > 0) {
      kp *= -k * k;
      nf *= double(n);
    }
    const double th = std::pow(t, double(n) - 0.5);
    sum += kp / nf * (sp4 * th * (c2 - lt) + 0.25 * std::pow(t, double(n)));
  }
  return sum;
}

/** \brief I** = (3/4) gamma - (1/2) ln(2 sqrt(pi)). */
inline double heat_constant() { return 0.75 * euler_gamma - 0.5 * std::log(2.0 * std::sqrt(pi)); }

/**
 * \brief Gamma(z)^{-1} int_0^inf t^{z-1} Theta(t) dt, which equals zeta(z)^2.
 *
 * On (0,1] the Weyl part is integrated in closed form; the periodic-orbit
 * remainder uses its small-t series below t = 0.05 and Theta - Theta^W above.
 */
inline EvalResult mellin_check(cplx z, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (!(z.real() > 1.0)) throw domain_error("mellin_check: requires Re z > 1");
  ctrl.validate();
  const double t0 = 0.05;
  SeriesControl inner = ctrl;
  inner.tol = 1e-16;
  auto power = [z](double t) { return std::exp((z - 1.0) * std::log(t)); };
  auto po_small = [](double t) {
    // -sum B_{2m+2}^2 t^{2m+1} / ((2m+2)^2 (2m+1)!)
    double s = 0.0, f = 1.0, tp = t;
    for (int m = 0; m < 12; ++m) {
      if (m > 0) f *= double(2 * m) * (2 * m + 1);
      double b = bernoulli(2 * m + 2);
      double term = b * b / (double(2 * m + 2) * (2 * m + 2) * f) * tp;
      s -= term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
      tp *= t * t;
    }
    return s;
  };
  auto f_small = [&](double t) { return power(t) * po_small(t); };
  auto f_mid = [&](double t) {
    return power(t) * (theta_direct(t, table, inner).real() - theta_weyl(t));
  };
  auto f_big = [&](double t) { return power(t) * theta_direct(t, table, inner).real(); };
  const double qt = std::min(1e-10, ctrl.tol);
  auto a = quad::integrate(f_small, 0.0, t0, qt);
  auto b = quad::integrate(f_mid, t0, 1.0, qt);
  auto c = quad::integrate(f_big, 1.0, std::numeric_limits<double>::infinity(), qt);
  const cplx zm1 = z - 1.0;
  cplx weyl = 1.0 / (zm1 * zm1) + euler_gamma / zm1 + 0.25 / z;
  cplx total = (a.value + b.value + c.value + weyl) * std::exp(-lgamma_c(z));
  double err = a.error + b.error + c.error;
  return {total, err, 0, err < ctrl.tol};
}

}  // namespace qgraph
