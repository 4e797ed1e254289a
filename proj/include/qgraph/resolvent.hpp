#pragma once

#include <cmath>
#include <complex>

#include "arithmetic.hpp"
#include "core.hpp"
#include "quadrature.hpp"
#include "specfun/bernoulli.hpp"
#include "specfun/gamma.hpp"
#include "specfun/zeta.hpp"

namespace qgraph {

enum class Representation { direct, periodic_orbit, power_series, asymptotic, digamma };

/** \brief A resolvent-type value tagged with the representation that produced it. */
struct ResolventPoint {
  cplx k;
  cplx value;
  Representation representation;
};

namespace detail {

// explicit terms before switching to the tail expansion in k/N
inline std::size_t spectral_cutoff(cplx k, const DivisorTable& table, const char* who) {
  // powers of two times 1000 keep the number of cached tail tables small
  std::size_t N = 1000;
  while (double(N) < 20.0 * std::abs(k)) N *= 2;
  if (N > table.limit()) throw out_of_range(std::string(who) + ": divisor table too small");
  return N;
}

// sum_{j>=0} c_j z^j T_{a j + b}(N) until terms vanish
template <class C>
cplx tail_series(cplx z, int a, int b, std::size_t N, const DivisorTable& table, C&& coef) {
  const auto& T = table.tails(N);
  cplx sum = 0.0, zp = 1.0;
  for (int j = 0; a * j + b <= DivisorTable::max_tail_order; ++j) {
    cplx term = coef(j) * zp * T[a * j + b];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) || std::abs(term) < 1e-300) break;
    zp *= z;
  }
  return sum;
}

inline void check_spectral_point(cplx k, const char* who) {
  // poles of sum d(n)/(n^2+k^2) at k = +-i n
  if (k.real() == 0.0 && k.imag() != 0.0) {
    double a = std::abs(k.imag());
    if (a == std::floor(a)) throw pole_error(std::string(who) + ": k on the spectrum");
  }
}

// coth(x) - 1/x
inline cplx coth_minus_inv(cplx x) {
  if (std::abs(x) < 0.5) {
    const auto& b = bernoulli_doubles();
    cplx x2 = x * x, p = x, s = 0.0;
    double f = 2.0, pw = 4.0;  // (2m)!, 2^{2m}
    for (int m = 1; m <= 20; ++m) {
      cplx term = pw * b[2 * m] / f * p;
      s += term;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
      p *= x2;
      f *= double(2 * m + 1) * (2 * m + 2);
      pw *= 4.0;
    }
    return s;
  }
  if (x.real() > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x) - 1.0 / x;
  if (x.real() < -20.0) return -1.0 - 2.0 * std::exp(2.0 * x) - 1.0 / x;
  return 1.0 / std::tanh(x) - 1.0 / x;
}

}  // namespace detail

/** \brief T(k) = sum d(l)/(l^2+k^2), explicit terms plus a tail expanded in k^2. */
inline EvalResult resolvent_trace_direct(cplx k, const DivisorTable& table,
                                         const SeriesControl& ctrl = {}) {
  ctrl.validate();
  detail::check_spectral_point(k, "resolvent_trace_direct");
  const std::size_t N = detail::spectral_cutoff(k, table, "resolvent_trace_direct");
  const cplx k2 = k * k;
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) s += double(table[n]) / (double(n) * n + k2);
  cplx tail = detail::tail_series(-k2, 2, 2, N, table, [](int) { return 1.0; });
  cplx v = s.value() + tail;
  return {v, 1e-15 * std::abs(v) * std::sqrt(double(N)), N, true};
}

/** \brief One periodic-orbit term -1/(2k^2) + (pi/(2nk)) coth(pi k/n). */
inline cplx resolvent_po_term(double n, cplx k) {
  const cplx x = pi * k / n;
  return pi / (2.0 * n * k) * detail::coth_minus_inv(x);
}

/** \brief T(k) from the periodic-orbit series, Re k > 0. */
inline EvalResult resolvent_trace_po(cplx k, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(k.real() > 0)) throw domain_error("resolvent_trace_po: requires Re k > 0");
  detail::check_spectral_point(k, "resolvent_trace_po");
  const std::size_t N = std::max<std::size_t>(1000, std::size_t(std::ceil(20.0 * std::abs(k))));
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) s += resolvent_po_term(double(n), k);
  // sum_{n>N} of the expanded terms: sum_j (-k^2)^j zeta(2j+2) zeta_H(2j+2, N+1)
  const cplx mk2 = -k * k;
  cplx tail = 0.0, p = 1.0;
  for (int j = 0; j < 60; ++j) {
    cplx term = p * riemann_zeta(double(2 * j + 2)) * hurwitz_zeta(double(2 * j + 2), double(N + 1));
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    p *= mk2;
  }
  cplx v = s.value() + tail;
  return {v, 1e-15 * std::abs(v) * std::sqrt(double(N)), N, true};
}

/** \brief T(k) = sum (-1)^m zeta(2m+2)^2 k^{2m}, |k| < 1. */
inline EvalResult resolvent_trace_series(cplx k, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(std::abs(k) < 1.0)) throw domain_error("resolvent_trace_series: requires |k| < 1");
  const cplx mk2 = -k * k;
  CompensatedSum<cplx> s;
  cplx p = 1.0;
  std::size_t m = 0;
  double last = 0.0;
  for (; m < ctrl.max_terms; ++m) {
    double z = riemann_zeta(double(2 * m + 2));
    cplx term = z * z * p;
    s += term;
    last = std::abs(term);
    if (last < 0.01 * ctrl.tol * std::max(1.0, std::abs(s.value()))) break;
    p *= mk2;
  }
  return {s.value(), last, m + 1, m < ctrl.max_terms};
}

/** \brief Weyl part (1/2k)[pi ln k + 2 pi gamma + 1/(2k)]. */
inline double resolvent_trace_weyl(double k) {
  if (!(k > 0)) throw invalid_argument("resolvent_trace_weyl: requires k > 0");
  return pi * std::log(k) / (2 * k) + pi * euler_gamma / k + 0.25 / (k * k);
}

/** \brief Leading oscillatory correction sqrt2 pi k^{-5/4} e^{-2 pi sqrt(2k)} cos(2 pi sqrt(2k) + pi/8). */
inline double resolvent_trace_oscillatory(double k) {
  if (!(k > 0)) throw invalid_argument("resolvent_trace_oscillatory: requires k > 0");
  const double r = 2 * pi * std::sqrt(2 * k);
  return std::sqrt(2.0) * pi * std::pow(k, -1.25) * std::exp(-r) * std::cos(r + pi / 8);
}

/** \brief Large-k form of T(k). */
inline double resolvent_trace_asymptotic(double k) {
  return resolvent_trace_weyl(k) + resolvent_trace_oscillatory(k);
}

inline ResolventPoint resolvent_point(cplx k, Representation rep, const DivisorTable& table,
                                      const SeriesControl& ctrl = {}) {
  switch (rep) {
    case Representation::direct: return {k, resolvent_trace_direct(k, table, ctrl).value, rep};
    case Representation::periodic_orbit: return {k, resolvent_trace_po(k, ctrl).value, rep};
    case Representation::power_series: return {k, resolvent_trace_series(k, ctrl).value, rep};
    case Representation::asymptotic:
      if (k.imag() != 0.0) throw domain_error("resolvent_point: asymptotic form needs real k");
      return {k, resolvent_trace_asymptotic(k.real()), rep};
    default: throw invalid_argument("resolvent_point: representation not available for T");
  }
}

enum class TauRepr { direct, digamma, series };

namespace detail {

inline void check_negative_integer(cplx k, const char* who) {
  if (k.imag() == 0.0 && k.real() < 0 && k.real() == std::floor(k.real()))
    throw pole_error(std::string(who) + ": pole at a negative integer");
}

inline EvalResult tau_direct(cplx k, const DivisorTable& table) {
  const std::size_t N = spectral_cutoff(k, table, "tau");
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) {
    const double dn = double(n);
    s += double(table[n]) / (dn * (dn + k));
  }
  cplx tail = tail_series(-k, 1, 2, N, table, [](int) { return 1.0; });
  cplx v = -k * s.value() - k * tail;
  return {v, 1e-15 * (1.0 + std::abs(v)) * std::sqrt(double(N)), N, true};
}

inline EvalResult tau_digamma(cplx k, const DivisorTable& table) {
  const std::size_t N = spectral_cutoff(k, table, "tau");
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) {
    const double dn = double(n);
    s += (digamma(1.0 + k / dn) + euler_gamma) / dn;
  }
  // sum_{n>N} (1/n)[psi(1+k/n)+gamma] = sum_j (-1)^{j+1} zeta(j+1) k^j zeta_H(j+1, N+1)
  cplx tail = 0.0, p = k;
  for (int j = 1; j < 80; ++j) {
    cplx term = p * riemann_zeta(double(j + 1)) * hurwitz_zeta(double(j + 1), double(N + 1));
    tail += (j % 2 ? term : -term);
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    p *= k;
  }
  cplx v = -(s.value() + tail);
  return {v, 1e-15 * (1.0 + std::abs(v)) * std::sqrt(double(N)), N, true};
}

inline EvalResult tau_series(cplx k, const SeriesControl& ctrl) {
  if (!(std::abs(k) < 1.0)) throw domain_error("tau: series requires |k| < 1");
  CompensatedSum<cplx> s;
  cplx p = -k;
  std::size_t m = 1;
  double last = 0.0;
  for (; m < ctrl.max_terms; ++m) {
    double z = riemann_zeta(double(m + 1));
    cplx term = z * z * p;
    s += term;
    last = std::abs(term);
    if (last < 0.01 * ctrl.tol * std::max(1.0, std::abs(s.value()))) break;
    p *= -k;
  }
  return {s.value(), last, m, m < ctrl.max_terms};
}

}  // namespace detail

/** \brief tau(k) = sum d(n) [1/(n+k) - 1/n]. */
inline EvalResult tau(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {},
                      TauRepr rep = TauRepr::direct) {
  ctrl.validate();
  detail::check_negative_integer(k, "tau");
  if (k == 0.0) return {0.0, 0.0, 0, true};
  switch (rep) {
    case TauRepr::direct: return detail::tau_direct(k, table);
    case TauRepr::digamma: return detail::tau_digamma(k, table);
    default: return detail::tau_series(k, ctrl);
  }
}

/** \brief -ln^2 k/2 - 2 gamma ln k + D + 1/(4k). */
inline double tau_asymptotic(double k, const ConstantsBundle& c = euler_constants()) {
  if (!(k > 0)) throw invalid_argument("tau_asymptotic: requires k > 0");
  const double l = std::log(k);
  return -0.5 * l * l - 2.0 * c.gamma * l + c.D_const + 0.25 / k;
}

/**
 * \brief N(x) from (1/pi) int_0^x Im tau(-k - i eps) dk, extrapolated to eps = 0.
 *
 * Quadrature nodes are refined around the Lorentzian peaks at the integers.
 */
inline EvalResult counting_from_tau(double x, const DivisorTable& table,
                                    const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(x > 0)) throw invalid_argument("counting_from_tau: requires x > 0");
  if (ctrl.eps_schedule.size() < 2)
    throw invalid_argument("counting_from_tau: need at least two eps values");
  std::vector<cplx> vals;
  for (double eps : ctrl.eps_schedule) {
    auto f = [&](double k) { return detail::tau_direct(cplx(-k, -eps), table).value.imag(); };
    std::vector<double> pts{0.0};
    for (int n = 1; n <= int(std::floor(x)); ++n)
      for (double off : {-20.0, -4.0, -1.0, 0.0, 1.0, 4.0, 20.0}) {
        double p = n + off * eps;
        if (p > pts.back() && p < x) pts.push_back(p);
      }
    pts.push_back(x);
    auto r = quad::integrate_pieces(f, pts, 1e-11);
    vals.push_back(r.value / pi);
  }
  double err = 0.0;
  cplx v = richardson(ctrl.eps_schedule, vals, 1.0, &err);
  return {v.real(), err, vals.size(), err < 0.05};
}

}  // namespace qgraph
