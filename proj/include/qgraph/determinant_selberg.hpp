#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "arithmetic.hpp"
#include "core.hpp"
#include "resolvent.hpp"
#include "specfun/bessel.hpp"
#include "specfun/zeta.hpp"
#include "zeta_gamma.hpp"

namespace qgraph {

/** \brief Z on the critical line together with its phase-corrected real form. */
struct CriticalLinePoint {
  double k = 0.0;
  cplx z_value{};
  double hardy_value = 0.0;
  double weyl_phase = 0.0;
  double hardy_imag = 0.0;  // Im(e^{i pi N^W} Z(ik)) / (|Z(ik)| + floor)
  double err_estimate = 0.0;
};

struct HardyValue {
  double value = 0.0;
  double imag_diagnostic = 0.0;
};

namespace detail {

inline constexpr double hardy_floor = 1e-12;

// k^2 = -n^2 exactly
inline bool on_zero_set(cplx k) {
  if (k.real() != 0.0 || k.imag() == 0.0) return false;
  const double a = std::abs(k.imag());
  return a == std::floor(a);
}

// ln(1 + k^2/n^2) split as ln(1 + ik/n) + ln(1 - ik/n), accurate near the zeros
inline cplx log_weierstrass_factor(cplx k, double n) {
  const cplx ik = cplx(0.0, 1.0) * k / n;
  return log1p_c(ik) + log1p_c(-ik);
}

// sum_{m>=1} (-1)^{m+1} c_m k^{2m}/m with c_m = zeta(2m)
inline cplx log_sinh_series(cplx x) {
  const cplx u = x * x / (pi * pi);
  cplx s = 0.0, p = u;
  for (int m = 1; m < 60; ++m) {
    cplx term = riemann_zeta(double(2 * m)) * p / double(m);
    s += (m % 2 ? term : -term);
    if (std::abs(term) < 1e-18 * std::abs(s)) break;
    p *= u;
  }
  return s;
}

// smoothing tolerance for the conditionally convergent Bessel series
inline double oscillatory_tol(const SeriesControl& ctrl) { return std::max(ctrl.tol, 1e-10); }

/**
 * Gaussian-smoothed sum  lim_M sum d(n) t(n) exp(-(n/M)^2), M = 256, 512, ...
 * The smoothing bias is a series in 1/M^2; the last three M are extrapolated.
 * Terms are cached across doublings; n runs to 6M where the weight is e^{-36}.
 */
template <class F>
EvalResult smoothed_divisor_sum(F&& term, const DivisorTable& table, const SeriesControl& ctrl,
                                double tol, const char* who) {
  std::vector<cplx> t(1, 0.0), vals;
  std::vector<double> hs;
  cplx prev = 0.0;
  std::size_t small = 0;
  double diff = INFINITY;
  for (std::size_t M = 256;; M *= 2) {
    const std::size_t nmax = 6 * M;
    if (nmax > table.limit() || nmax > ctrl.max_terms) {
      EvalResult partial{prev, diff, t.size() - 1, false};
      throw convergence_failure(std::string(who) + ": smoothed series did not settle", partial);
    }
    while (t.size() <= nmax) t.push_back(term(double(t.size())));
    CompensatedSum<cplx> s;
    const double inv = 1.0 / double(M);
    for (std::size_t n = nmax; n >= 1; --n) {
      const double r = n * inv;
      s += double(table[n]) * t[n] * std::exp(-r * r);
    }
    hs.push_back(inv);
    vals.push_back(s.value());
    const std::size_t m = std::min<std::size_t>(3, hs.size());
    const cplx v = richardson({hs.end() - m, hs.end()}, {vals.end() - m, vals.end()}, 2.0);
    if (hs.size() >= 3) {
      diff = std::abs(v - prev);
      if (diff <= tol * std::max(1.0, std::abs(v))) {
        if (++small >= 2) return {v, diff, nmax, true};
      } else {
        small = 0;
      }
    }
    prev = v;
  }
}

// plain sum of an exponentially decaying series up to n_cut
template <class F>
EvalResult truncated_divisor_sum(F&& term, std::size_t n_cut, const DivisorTable& table,
                                 const char* who) {
  if (n_cut > table.limit()) throw out_of_range(std::string(who) + ": divisor table too small");
  CompensatedSum<cplx> s;
  for (std::size_t n = n_cut; n >= 1; --n) s += double(table[n]) * term(double(n));
  cplx v = s.value();
  return {v, 1e-15 * std::abs(v) * std::sqrt(double(n_cut)), n_cut, true};
}

// K1 pair of the periodic-orbit series for ln Z(s), without the -2 sqrt(s) prefactor
inline cplx selberg_pair(double n, cplx s) {
  const cplx w = 4.0 * pi * std::sqrt(n * s);
  const cplx ep = std::polar(1.0, pi / 4), em = std::conj(ep);
  return (em * bessel_k1(w * ep) + ep * bessel_k1(w * em)) / std::sqrt(n);
}

}  // namespace detail

/** \brief ln D(k^2) from the Weierstrass product (principal branch per factor). */
inline EvalResult log_det_weierstrass(cplx k, const DivisorTable& table,
                                      const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (detail::on_zero_set(k)) throw pole_error("log_det_weierstrass: D vanishes at k^2 = -n^2");
  const std::size_t N = detail::spectral_cutoff(k, table, "det_weierstrass");
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) s += double(table[n]) * detail::log_weierstrass_factor(k, n);
  // sum_{n>N} d(n) ln(1+k^2/n^2) = sum_m (-1)^{m+1} k^{2m} T_{2m}(N)/m
  const cplx k2 = k * k;
  cplx tail = detail::tail_series(-k2, 2, 2, N, table, [](int j) { return 1.0 / double(j + 1); }) * k2;
  cplx v = -ln2pi + s.value() + tail;
  return {v, 1e-15 * (1.0 + std::abs(v)) * std::sqrt(double(N)), N, true};
}

/** \brief D(k^2) = (1/2pi) prod (1 + k^2/n^2)^{d(n)}; exactly zero at k = +-in. */
inline EvalResult det_weierstrass(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (detail::on_zero_set(k)) return {0.0, 0.0, 0, true};
  auto r = log_det_weierstrass(k, table, ctrl);
  cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.err_estimate, r.terms_used, r.converged};
}

/** \brief sinh(x)/x, with the removable point at 0. */
inline cplx sinh_factor(cplx x) {
  if (std::abs(x) < 0.5) return std::exp(detail::log_sinh_series(x));
  return std::sinh(x) / x;
}

/** \brief The same factor in Euler-product form e^{k l/2}(1 - e^{-k l})/(k l), l = 2pi/n. */
inline cplx sinh_factor_euler(cplx k, double ell) {
  const cplx kl = k * ell;
  return std::exp(0.5 * kl) * (1.0 - std::exp(-kl)) / kl;
}

/** \brief ln(sinh(x)/x), principal branch. */
inline cplx log_sinh_factor(cplx x) {
  if (std::abs(x) < 0.5) return detail::log_sinh_series(x);
  if (x.real() < 0) x = -x;
  return x + log1p_c(-std::exp(-2.0 * x)) - std::log(2.0 * x);
}

/** \brief ln D(k^2) from the periodic-orbit product over n of sinh(pi k/n)/(pi k/n). */
inline EvalResult log_det_sinh_product(cplx k, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  const std::size_t N = std::max<std::size_t>(1000, std::size_t(std::ceil(20.0 * std::abs(k))));
  if (N > ctrl.max_terms) {
    throw convergence_failure("det_sinh_product: max_terms too small for |k|",
                              EvalResult{0.0, INFINITY, 0, false});
  }
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) s += log_sinh_factor(pi * k / double(n));
  // sum_{n>N}: sum_m (-1)^{m+1} zeta(2m) k^{2m} zeta_H(2m, N+1)/m
  const cplx k2 = k * k;
  cplx tail = 0.0, p = k2;
  for (int m = 1; m < 60; ++m) {
    cplx term = riemann_zeta(double(2 * m)) * hurwitz_zeta(double(2 * m), double(N + 1)) * p / double(m);
    tail += (m % 2 ? term : -term);
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    p *= k2;
  }
  cplx v = -ln2pi + s.value() + tail;
  return {v, 1e-15 * (1.0 + std::abs(v)) * std::sqrt(double(N)), N, true};
}

/** \brief D(k^2) via the sinh product. */
inline EvalResult det_sinh_product(cplx k, const SeriesControl& ctrl = {}) {
  if (detail::on_zero_set(k)) return {0.0, 0.0, 0, true};
  auto r = log_det_sinh_product(k, ctrl);
  cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.err_estimate, r.terms_used, r.converged};
}

/** \brief ln D(k^2) = -ln 2pi - ln Gamma~(ik) - ln Gamma~(-ik). */
inline EvalResult log_det_via_gamma(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (detail::on_zero_set(k)) throw pole_error("log_det_via_gamma: D vanishes at k^2 = -n^2");
  const cplx ik = cplx(0.0, 1.0) * k;
  auto a = log_gamma_tilde(ik, table, ctrl, GammaRepr::gamma_product);
  auto b = log_gamma_tilde(-ik, table, ctrl, GammaRepr::gamma_product);
  cplx v = -ln2pi - a.value - b.value;
  return {v, a.err_estimate + b.err_estimate, 0, a.converged && b.converged};
}

/** \brief D(k^2) via Gamma~. */
inline EvalResult det_via_gamma(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  if (detail::on_zero_set(k)) return {0.0, 0.0, 0, true};
  auto r = log_det_via_gamma(k, table, ctrl);
  cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.err_estimate, r.terms_used, r.converged};
}

/** \brief prod_{n<=N} (1 - e^{2 pi i k/n}); exact zeros when k/n is an integer. */
inline cplx truncated_secular(cplx k, std::size_t N) {
  if (N == 0) throw invalid_argument("truncated_secular: N must be at least 1");
  cplx p = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    cplx q = k / double(n);
    q -= std::round(q.real());
    p *= -expm1_c(cplx(0.0, 2.0 * pi) * q);
  }
  return p;
}

/** \brief Logarithm of the regularized secular function at truncation N. */
inline double log_regularized_secular(double k, std::size_t N) {
  if (!(k > 0)) throw invalid_argument("regularized_secular: requires k > 0");
  if (N == 0) throw invalid_argument("regularized_secular: N must be at least 1");
  CompensatedSum<double> s;
  double L = 0.0;
  for (std::size_t n = N; n >= 1; --n) {
    L += pi / double(n);
    s += std::log1p(-std::exp(-2.0 * pi * k / double(n)));
  }
  return -ln2pi + std::lgamma(double(N) + 1.0) + k * L - double(N) * std::log(2.0 * pi * k) + s.value();
}

/** \brief (1/2pi) N! e^{k L_N} (2 pi k)^{-N} F~_N(ik), L_N = sum_{n<=N} pi/n. */
inline double regularized_secular(double k, std::size_t N) {
  return std::exp(log_regularized_secular(k, N));
}

/** \brief -ln 2pi + sum_{m<=order} (-1)^{m+1} zeta(2m)^2 k^{2m}/m, |k| < 1. */
inline cplx log_det_small_k(cplx k, int order) {
  if (!(std::abs(k) < 1.0)) throw domain_error("log_det_small_k: requires |k| < 1");
  if (order < 0) throw invalid_argument("log_det_small_k: order must be nonnegative");
  const cplx k2 = k * k;
  cplx s = -ln2pi, p = k2;
  for (int m = 1; m <= order; ++m) {
    const double z = riemann_zeta(double(2 * m));
    cplx term = z * z * p / double(m);
    s += (m % 2 ? term : -term);
    p *= k2;
  }
  return s;
}

/** \brief pi s ln s + pi(2 gamma - 1)s + (1/2) ln s. */
inline double log_det_weyl(double s) {
  if (!(s > 0)) throw invalid_argument("log_det_weyl: requires s > 0");
  return pi * s * std::log(s) + pi * (2.0 * euler_gamma - 1.0) * s + 0.5 * std::log(s);
}

/** \brief Leading oscillatory correction -sqrt2 s^{1/4} e^{-2pi sqrt(2s)} cos(2pi sqrt(2s) + 3pi/8). */
inline double log_det_oscillatory(double s) {
  if (!(s > 0)) throw invalid_argument("log_det_oscillatory: requires s > 0");
  const double r = 2.0 * pi * std::sqrt(2.0 * s);
  return -std::sqrt(2.0) * std::pow(s, 0.25) * std::exp(-r) * std::cos(r + 3.0 * pi / 8.0);
}

/** \brief Large-s form of ln D(s^2). */
inline double log_det_asymptotic(double s) { return log_det_weyl(s) + log_det_oscillatory(s); }

/**
 * \brief ln Z(s) from the K1 periodic-orbit series, Re s > 0 or s on the
 * critical line off iZ.
 */
inline EvalResult log_selberg_z_series(cplx s, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(s.real() >= 0) || s == 0.0) throw domain_error("selberg_z: requires Re s >= 0, s != 0");
  if (s.real() == 0.0 && std::abs(s.imag()) == std::floor(std::abs(s.imag())))
    throw pole_error("selberg_z: zero of Z on the critical line");
  const cplx pref = -2.0 * std::sqrt(s);
  auto term = [&](double n) { return detail::selberg_pair(n, s); };
  // slowest decay rate of the pair is exp(-r sqrt n)
  const double theta = std::abs(std::arg(s));
  const double r = 4.0 * pi * std::sqrt(std::abs(s)) * std::cos(0.5 * theta + 0.25 * pi);
  EvalResult e;
  if (r > 0 && (40.0 / r) * (40.0 / r) < 2e5) {
    const std::size_t n_cut = std::max<std::size_t>(16, std::size_t(std::ceil((40.0 / r) * (40.0 / r))));
    e = detail::truncated_divisor_sum(term, n_cut, table, "selberg_z");
  } else {
    e = detail::smoothed_divisor_sum(term, table, ctrl, detail::oscillatory_tol(ctrl), "selberg_z");
  }
  e.value *= pref;
  e.err_estimate *= std::abs(pref);
  return e;
}

/** \brief ln Z(s) = -(1/2) ln s - pi s ln s - (2 gamma - 1) pi s + ln D(s^2). */
inline EvalResult log_selberg_z_determinant(cplx s, const DivisorTable& table,
                                            const SeriesControl& ctrl = {}) {
  if (s == 0.0) throw domain_error("selberg_z: requires s != 0");
  auto d = log_det_weierstrass(s, table, ctrl);
  const cplx ls = std::log(s);
  d.value += -0.5 * ls - pi * s * ls - (2.0 * euler_gamma - 1.0) * pi * s;
  return d;
}

/** \brief Z(s) via the periodic-orbit series. */
inline EvalResult selberg_z(cplx s, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  auto r = log_selberg_z_series(s, table, ctrl);
  cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.err_estimate, r.terms_used, r.converged};
}

/**
 * \brief ln Z(ik) on the critical line:
 *   Re = pi sqrt(k) sum d J1(x)/sqrt n,  Im = -sqrt(k) sum d [pi Y1(x) + 2 K1(x)]/sqrt n,
 * x = 4 pi sqrt(nk).  Gaussian-smoothed.
 */
inline EvalResult log_selberg_z_critical(double k, const DivisorTable& table,
                                         const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(k > 0)) throw invalid_argument("selberg_z: critical line requires k > 0");
  if (k == std::floor(k)) throw pole_error("selberg_z: zero of Z on the critical line");
  auto term = [&](double n) {
    const double x = 4.0 * pi * std::sqrt(n * k);
    return cplx(pi * bessel_j1(x), -(pi * bessel_y1(x) + 2.0 * bessel_k1(x))) / std::sqrt(n);
  };
  auto e = detail::smoothed_divisor_sum(term, table, ctrl, detail::oscillatory_tol(ctrl), "selberg_z");
  e.value *= std::sqrt(k);
  e.err_estimate *= std::sqrt(k);
  return e;
}

/**
 * \brief ln Z(-ik) from the reflected determinant form
 *   ln Z(-s) = pi(s ln s + (2 gamma - 1)s - i pi s + i/2) - (1/2) ln s + ln D(s^2),  s = ik.
 */
inline EvalResult log_selberg_z_reflected(double k, const DivisorTable& table,
                                          const SeriesControl& ctrl = {}) {
  if (!(k > 0)) throw invalid_argument("selberg_z: requires k > 0");
  const cplx s(0.0, k);
  auto d = log_det_weierstrass(s, table, ctrl);
  const cplx ls = std::log(s);
  const cplx i(0.0, 1.0);
  d.value += pi * (s * ls + (2.0 * euler_gamma - 1.0) * s - i * pi * s + 0.5 * i) - 0.5 * ls;
  return d;
}

/** \brief Z(ik) with its Hardy-like real form e^{i pi N^W(k)} Z(ik). */
inline CriticalLinePoint critical_line_point(double k, const DivisorTable& table,
                                             const SeriesControl& ctrl = {}) {
  auto l = log_selberg_z_critical(k, table, ctrl);
  CriticalLinePoint p;
  p.k = k;
  p.z_value = std::exp(l.value);
  p.weyl_phase = pi * weyl_counting_term(k);
  const cplx h = std::polar(1.0, p.weyl_phase) * p.z_value;
  p.hardy_value = h.real();
  p.hardy_imag = std::abs(h.imag()) / (std::abs(p.z_value) + detail::hardy_floor);
  p.err_estimate = std::abs(p.z_value) * l.err_estimate;
  return p;
}

/** \brief Z_Delta(k) = Re(e^{i pi N^W(k)} Z(ik)) and the relative size of the discarded imaginary part. */
inline HardyValue hardy_z(double k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  auto p = critical_line_point(k, table, ctrl);
  return {p.hardy_value, p.hardy_imag};
}

/**
 * \brief |Z(-ik) - e^{2 pi i N^W(k)} Z(ik)| / max(|Z(ik)|, floor): left side from
 * the reflected determinant form, right side from the critical-line series.
 */
inline double functional_equation_residual(double k, const DivisorTable& table,
                                           const SeriesControl& ctrl = {}) {
  if (!(k > 0) || k == std::floor(k))
    throw invalid_argument("functional_equation_residual: requires k > 0 off the integers");
  const cplx zr = std::exp(log_selberg_z_reflected(k, table, ctrl).value);
  const cplx z = std::exp(log_selberg_z_critical(k, table, ctrl).value);
  const cplx rhs = std::polar(1.0, 2.0 * pi * weyl_counting_term(k)) * z;
  return std::abs(zr - rhs) / std::max(std::abs(z), detail::hardy_floor);
}

/**
 * \brief N^Osc(x) = d(x)/2 - sqrt(x) sum d(n)/sqrt(n) [(2/pi) K1 + Y1](4 pi sqrt(nx)),
 * Gaussian-smoothed.
 */
inline EvalResult n_osc_bessel(double x, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(x > 0)) throw invalid_argument("n_osc_bessel: requires x > 0");
  auto term = [&](double n) {
    const double y = 4.0 * pi * std::sqrt(n * x);
    return cplx((2.0 / pi) * bessel_k1(y) + bessel_y1(y), 0.0) / std::sqrt(n);
  };
  auto e = detail::smoothed_divisor_sum(term, table, ctrl, detail::oscillatory_tol(ctrl), "n_osc_bessel");
  e.value = 0.5 * divisor_at(x, table) - std::sqrt(x) * e.value.real();
  e.err_estimate *= std::sqrt(x);
  return e;
}

namespace detail {

inline void check_eps_schedule(const SeriesControl& ctrl) {
  ctrl.validate();
  if (ctrl.eps_schedule.size() < 2) throw invalid_argument("counting_reconstruction: need at least two eps values");
}

// extrapolate f(eps) linearly-in-eps to zero; unstable when the last two orders disagree
template <class F>
EvalResult eps_extrapolate(F&& f, const SeriesControl& ctrl, const char* who) {
  check_eps_schedule(ctrl);
  std::vector<cplx> v;
  std::size_t terms = 0;
  double err_series = 0.0;
  for (double e : ctrl.eps_schedule) {
    auto r = f(e);
    v.push_back(r.value);
    terms = std::max(terms, r.terms_used);
    err_series = std::max(err_series, r.err_estimate);
  }
  double err = 0.0;
  cplx x = richardson(ctrl.eps_schedule, v, 1.0, &err);
  EvalResult out{x, err + err_series, terms, true};
  if (!(err < 0.25)) throw convergence_failure(std::string(who) + ": eps extrapolation unstable", out);
  return out;
}

}  // namespace detail

/** \brief Z-route: N^W(k) + (1/pi) Im ln Z(ik(1 - i eps)) + d(k)/2 extrapolated to eps = 0. */
inline EvalResult counting_reconstruction(double k, const DivisorTable& table,
                                          const SeriesControl& ctrl = {}) {
  if (!(k > 0)) throw invalid_argument("counting_reconstruction: requires k > 0");
  auto f = [&](double e) {
    auto r = log_selberg_z_series(cplx(k * e, k), table, ctrl);
    return EvalResult{r.value.imag() / pi, r.err_estimate / pi, r.terms_used, r.converged};
  };
  auto r = detail::eps_extrapolate(f, ctrl, "counting_reconstruction");
  r.value = weyl_counting_term(k) + r.value.real() + 0.5 * divisor_at(k, table);
  return r;
}

/** \brief (1/pi) Im ln D(-(k - i eps)^2) at fixed eps, each factor on its own continuous branch. */
inline EvalResult counting_determinant_at(double k, double eps, const DivisorTable& table) {
  if (!(k > 0) || !(eps > 0)) throw invalid_argument("counting_reconstruction: requires k, eps > 0");
  const cplx q(k, -eps);
  const std::size_t N = detail::spectral_cutoff(q, table, "counting_reconstruction");
  CompensatedSum<double> s;
  for (std::size_t n = N; n >= 1; --n) {
    const double dn = double(n);
    // 1 - q^2/n^2 = (n - q)(n + q)/n^2
    s += double(table[n]) * (std::arg(dn - q) + std::arg(dn + q));
  }
  const cplx q2 = q * q;
  cplx tail = detail::tail_series(q2, 2, 2, N, table, [](int j) { return -1.0 / double(j + 1); }) * q2;
  double v = (s.value() + tail.imag()) / pi;
  return {v, 1e-15 * std::sqrt(double(N)) * (1.0 + std::abs(v)), N, true};
}

/** \brief D-route: lim (1/pi) Im ln D(-(k - i eps)^2) = N(k) - d(k)/2. */
inline EvalResult counting_reconstruction_determinant(double k, const DivisorTable& table,
                                                      const SeriesControl& ctrl = {}) {
  auto f = [&](double e) { return counting_determinant_at(k, e, table); };
  return detail::eps_extrapolate(f, ctrl, "counting_reconstruction");
}

}  // namespace qgraph
