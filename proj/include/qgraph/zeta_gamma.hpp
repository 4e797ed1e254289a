#pragma once

#include <cmath>
#include <complex>
#include <map>

#include "arithmetic.hpp"
#include "core.hpp"
#include "quadrature.hpp"
#include "resolvent.hpp"
#include "specfun/constants.hpp"
#include "specfun/gamma.hpp"
#include "specfun/zeta.hpp"

namespace qgraph {

/** \brief Laurent principal part at a pole: order -> coefficient. */
struct PrincipalPart {
  cplx location;
  std::map<int, cplx> coefficients;
};

/**
 * \brief Principal part of sum d(n) (n+k)^{-s}.
 *
 * n = -1 gives the double pole at s = 1, n >= 0 the simple pole at s = -n
 * with coefficient -k^{n+1}/(n+1).
 */
inline PrincipalPart principal_part_zhat(int n, cplx k = 0.0) {
  if (n < -1) throw invalid_argument("principal_part_zhat: n must be >= -1");
  if (n == -1) return {1.0, {{2, 1.0}, {1, 2.0 * euler_gamma}}};
  return {double(-n), {{1, -std::pow(k, double(n + 1)) / double(n + 1)}}};
}

namespace detail {

// sum_{n>N} d(n) [(n+k)^{-s} - n^{-s}] for j >= j0, via binomial series in k/n
inline cplx binomial_tail(cplx s, cplx k, int j0, std::size_t N, const DivisorTable& table) {
  cplx sum = 0.0, c = 1.0, kp = 1.0;  // binom(-s, j), k^j
  for (int j = 0; j < 200; ++j) {
    if (j > 0) {
      c *= (-s - double(j - 1)) / double(j);
      kp *= k;
    }
    if (j < j0) continue;
    cplx term = c * kp * table.tail(s + double(j), N);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) || std::abs(term) < 1e-300) break;
  }
  return sum;
}

inline void check_k_domain(cplx k, const char* who) {
  if (k.imag() == 0.0 && k.real() <= -1.0)
    throw domain_error(std::string(who) + ": k on (-inf, -1]");
}

}  // namespace detail

/** \brief Zhat(s,k) = sum d(n) (n+k)^{-s}, Re s > 1. */
inline EvalResult zhat(cplx s, cplx k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(s.real() > 1.0)) throw domain_error("zhat: requires Re s > 1");
  if (!(k.real() > -1.0)) throw domain_error("zhat: requires Re k > -1");
  const std::size_t N = detail::spectral_cutoff(k, table, "zhat");
  CompensatedSum<cplx> sum;
  for (std::size_t n = N; n >= 1; --n)
    sum += double(table[n]) * std::exp(-s * std::log(double(n) + k));
  cplx v = sum.value() + detail::binomial_tail(s, k, 0, N, table);
  return {v, 1e-15 * std::abs(v) * std::sqrt(double(N)), N, true};
}

/** \brief sum d(n) [(n+k)^{-s} - n^{-s}], Re s > 0. */
inline EvalResult zhat_tilde(cplx s, cplx k, const DivisorTable& table,
                             const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(s.real() > 0.0)) throw domain_error("zhat_tilde: requires Re s > 0");
  detail::check_k_domain(k, "zhat_tilde");
  if (k == 0.0) return {0.0, 0.0, 0, true};
  const std::size_t N = detail::spectral_cutoff(k, table, "zhat_tilde");
  CompensatedSum<cplx> sum;
  for (std::size_t n = N; n >= 1; --n) {
    const double dn = double(n);
    // (1+k/n)^{-s} - 1 without cancellation
    cplx w = -s * log1p_c(k / dn);
    sum += double(table[n]) * std::exp(-s * std::log(dn)) * expm1_c(w);
  }
  cplx v = sum.value() + detail::binomial_tail(s, k, 1, N, table);
  return {v, 1e-15 * (1.0 + std::abs(v)) * std::sqrt(double(N)), N, true};
}

/** \brief Fp[zeta^2]_{s=1} = gamma^2 - 2 gamma_1. */
inline double finite_part_zeta_sq(const ConstantsBundle& c = euler_constants()) {
  return c.gamma_tilde;
}

inline const std::vector<double>& finite_part_steps() {
  // powers of two so that 1 + h is exact
  static const std::vector<double> h{0x1p-7, 0x1p-8, 0x1p-9, 0x1p-10};
  return h;
}

/**
 * \brief zeta(1+h)^2 - 1/h^2 - 2 gamma/h extrapolated to h = 0.
 *
 * With R = zeta(1+h) - 1/h the bracket is 2(R - gamma)/h + R^2.
 */
inline EvalResult finite_part_zeta_sq_numeric() {
  std::vector<cplx> f;
  for (double h : finite_part_steps()) {
    cplx R = zeta_regular(cplx(1.0 + h, 0.0));
    f.push_back(2.0 * (R - euler_gamma) / h + R * R);
  }
  double err = 0.0;
  cplx v = richardson(finite_part_steps(), f, 1.0, &err);
  return {v, err, f.size(), true};
}

/** \brief Fp[Zhat(s,k)]_{s=1}: direct sums at s = 1+h, principal part removed, h -> 0. */
inline EvalResult finite_part_zhat(cplx k, const DivisorTable& table,
                                   const SeriesControl& ctrl = {}) {
  std::vector<cplx> f;
  for (double h : finite_part_steps()) {
    cplx z = zhat(cplx(1.0 + h, 0.0), k, table, ctrl).value;
    f.push_back(z - 1.0 / (h * h) - 2.0 * euler_gamma / h);
  }
  double err = 0.0;
  cplx v = richardson(finite_part_steps(), f, 1.0, &err);
  return {v, err, f.size(), true};
}

enum class GammaRepr { weierstrass, gamma_product, integral };

namespace detail {

inline void check_gamma_pole(cplx k, const char* who) {
  if (k.imag() == 0.0 && k.real() < 0 && k.real() == std::floor(k.real()))
    throw pole_error(std::string(who) + ": pole at a negative integer");
}

inline cplx log_gamma_tilde_weierstrass(cplx k, const DivisorTable& table) {
  const std::size_t N = spectral_cutoff(k, table, "gamma_tilde");
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) {
    const cplx x = k / double(n);
    s += double(table[n]) * (log1p_c(x) - x);
  }
  // sum_{j>=2} (-1)^{j+1} k^j/j T_j(N)
  cplx tail = tail_series(-k, 1, 2, N, table, [](int j) { return -1.0 / double(j + 2); }) * k * k;
  return -euler_constants().gamma_tilde * k - s.value() - tail;
}

inline cplx log_gamma_tilde_product(cplx k, const DivisorTable& table) {
  const std::size_t N = spectral_cutoff(k, table, "gamma_tilde");
  CompensatedSum<cplx> s;
  for (std::size_t n = N; n >= 1; --n) {
    const cplx x = k / double(n);
    s += euler_gamma * x + lgamma_c(1.0 + x);
  }
  // sum_{n>N}: sum_{j>=2} (-1)^j zeta(j) k^j zeta_H(j, N+1)/j
  cplx tail = 0.0, p = k * k;
  for (int j = 2; j < 90; ++j) {
    cplx term = p * riemann_zeta(double(j)) * hurwitz_zeta(double(j), double(N + 1)) / double(j);
    tail += (j % 2 ? -term : term);
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    p *= k;
  }
  return -euler_constants().gamma_tilde * k + s.value() + tail;
}

inline EvalResult log_gamma_tilde_integral(double k, const DivisorTable& table,
                                           const SeriesControl& ctrl) {
  if (!(k >= 0)) throw domain_error("gamma_tilde: integral form needs real k >= 0");
  auto f = [&](double x) { return x == 0.0 ? 0.0 : tau(x, table, ctrl).real(); };
  std::vector<double> pts{0.0};
  for (double b = 1.0; b < k; b *= 4.0) pts.push_back(b);
  pts.push_back(k);
  auto r = quad::integrate_pieces(f, pts, 1e-13);
  double v = -euler_constants().gamma_tilde * k - r.value;
  return {v, r.error + 1e-14 * std::abs(v), 0, r.error < ctrl.tol * std::max(1.0, std::abs(v))};
}

}  // namespace detail

/** \brief ln Gamma~(k).  Imaginary part is defined modulo 2 pi. */
inline EvalResult log_gamma_tilde(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {},
                                  GammaRepr rep = GammaRepr::weierstrass) {
  ctrl.validate();
  detail::check_gamma_pole(k, "gamma_tilde");
  if (k == 0.0) return {0.0, 0.0, 0, true};
  switch (rep) {
    case GammaRepr::weierstrass: {
      cplx v = detail::log_gamma_tilde_weierstrass(k, table);
      return {v, 1e-14 * (1.0 + std::abs(v)), 0, true};
    }
    case GammaRepr::gamma_product: {
      cplx v = detail::log_gamma_tilde_product(k, table);
      return {v, 1e-14 * (1.0 + std::abs(v)), 0, true};
    }
    default:
      if (k.imag() != 0.0) throw domain_error("gamma_tilde: integral form needs real k >= 0");
      return detail::log_gamma_tilde_integral(k.real(), table, ctrl);
  }
}

/** \brief Gamma~(k) = exp(ln Gamma~(k)); overflows for large k, use log_gamma_tilde there. */
inline EvalResult gamma_tilde(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {},
                              GammaRepr rep = GammaRepr::weierstrass) {
  auto r = log_gamma_tilde(k, table, ctrl, rep);
  cplx v = std::exp(r.value);
  return {v, std::abs(v) * r.err_estimate, r.terms_used, r.converged};
}

/** \brief 1/Gamma~(k), entire; exactly zero at negative integers. */
inline cplx reciprocal_gamma_tilde(cplx k, const DivisorTable& table) {
  if (k.imag() == 0.0 && k.real() < 0 && k.real() == std::floor(k.real())) return 0.0;
  return std::exp(-log_gamma_tilde(k, table).value);
}

/** \brief psi~(k) = -gamma~ - tau(k); direct or digamma series. */
inline EvalResult psi_tilde(cplx k, const DivisorTable& table, const SeriesControl& ctrl = {},
                            TauRepr rep = TauRepr::direct) {
  auto t = tau(k, table, ctrl, rep);
  t.value = -euler_constants().gamma_tilde - t.value;
  return t;
}

/** \brief Exponent of the Stirling-like formula (log scale). */
inline double gamma_tilde_stirling(double k) {
  if (!(k > 0)) throw invalid_argument("gamma_tilde_stirling: requires k > 0");
  const double l = std::log(k);
  return 0.5 * k * l * l + (2 * euler_gamma - 1) * k * l + (1 + pi * pi / 6 - 2 * euler_gamma) * k -
         0.25 * l;
}

/** \brief Z_Delta(s,k) = sum d(n) (n^2+k^2)^{-s}, Re s > 1/2. */
inline EvalResult zdelta(cplx s, cplx k, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  if (!(s.real() > 0.5)) throw domain_error("zdelta: requires Re s > 1/2");
  detail::check_spectral_point(k, "zdelta");
  const std::size_t N = detail::spectral_cutoff(k, table, "zdelta");
  const cplx k2 = k * k;
  CompensatedSum<cplx> sum;
  for (std::size_t n = N; n >= 1; --n)
    sum += double(table[n]) * std::exp(-s * std::log(double(n) * n + k2));
  // sum_j binom(-s,j) k^{2j} T_{2s+2j}(N)
  cplx tail = 0.0, c = 1.0, kp = 1.0;
  for (int j = 0; j < 200; ++j) {
    if (j > 0) {
      c *= (-s - double(j - 1)) / double(j);
      kp *= k2;
    }
    cplx term = c * kp * table.tail(2.0 * s + double(2 * j), N);
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail) || std::abs(term) < 1e-300) break;
  }
  cplx v = sum.value() + tail;
  return {v, 1e-15 * std::abs(v) * std::sqrt(double(N)), N, true};
}

/** \brief Closed-form Weyl part of Z_Delta(s,k). */
inline cplx zdelta_weyl(cplx s, cplx k) {
  if (!(s.real() > 0.5)) throw domain_error("zdelta_weyl: requires Re s > 1/2");
  const cplx k2 = k * k;
  if (!(k2.real() > 0)) throw domain_error("zdelta_weyl: requires Re k^2 > 0");
  const cplx lk = std::log(k);  // principal; k^{2s-1} = exp((2s-1) ln k)
  cplx pre = std::sqrt(pi) * std::exp(lgamma_c(s - 0.5) - lgamma_c(s) - (2.0 * s - 1.0) * lk) / 4.0;
  cplx br = -digamma(s - 0.5) + std::log(k2 / 4.0) + 3.0 * euler_gamma;
  return pre * br + 0.25 * std::exp(-2.0 * s * lk);
}

}  // namespace qgraph
