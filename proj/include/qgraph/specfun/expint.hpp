#pragma once

#include <cmath>

#include "../core.hpp"

namespace qgraph {

enum class ExpIntKind { Ei, E1 };

namespace detail {

inline double e1_series(double x) {
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

// e^x E1(x) by Lentz on the continued fraction, x > 1
inline double scaled_e1_cf(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    double an = -double(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

inline double ei_series(double x) {
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    double add = term / k;
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return euler_gamma + std::log(x) + sum;
}

// e^{-x} Ei(x) ~ sum k!/x^{k+1}, optimal truncation
inline double scaled_ei_asymptotic(double x) {
  double term = 1.0 / x, sum = term;
  for (int k = 1; k < 500; ++k) {
    double next = term * k / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

constexpr double ei_asymptotic_from = 40.0;

}  // namespace detail

inline double expint_e1(double x) {
  if (!(x > 0)) throw invalid_argument("expint_e1: requires x > 0");
  if (x <= 1.0) return detail::e1_series(x);
  return std::exp(-x) * detail::scaled_e1_cf(x);
}

inline double expint_ei(double x) {
  if (!(x > 0)) throw invalid_argument("expint_ei: requires x > 0");
  if (x < detail::ei_asymptotic_from) return detail::ei_series(x);
  return std::exp(x) * detail::scaled_ei_asymptotic(x);
}

inline double exp_integral(ExpIntKind kind, double x) {
  return kind == ExpIntKind::Ei ? expint_ei(x) : expint_e1(x);
}

/**
 * \brief e^x E1(x) - e^{-x} Ei(x), the periodic-orbit bracket.
 *
 * Behaves like -sum 2(2m+1)!/x^{2m+2}; that series (optimally truncated)
 * is used for x >= 40.
 */
inline double po_bracket(double x) {
  if (!(x > 0)) throw invalid_argument("po_bracket: requires x > 0");
  if (x < detail::ei_asymptotic_from) {
    double se1 = x <= 1.0 ? std::exp(x) * detail::e1_series(x) : detail::scaled_e1_cf(x);
    return se1 - std::exp(-x) * detail::ei_series(x);
  }
  const double x2 = x * x;
  double term = 2.0 / x2, sum = 0.0;
  for (int m = 0; m < 400; ++m) {
    sum -= term;
    double next = term * (2.0 * m + 2) * (2.0 * m + 3) / x2;
    if (next > term || next < 1e-18 * std::abs(sum)) break;
    term = next;
  }
  return sum;
}

}  // namespace qgraph
