#pragma once

#include <cmath>

#include "../core.hpp"

namespace qgraph {

namespace detail {

inline double omega_direct(double x) {
  double sum = 0.0;
  for (int n = 1; n < 100000; ++n) {
    double term = std::exp(-pi * double(n) * n * x);
    sum += term;
    if (term <= 1e-18 * sum || term == 0.0) break;
  }
  return sum;
}

inline double omega_dual(double x) {
  return (1.0 + 2.0 * omega_direct(1.0 / x)) / (2.0 * std::sqrt(x)) - 0.5;
}

// theta_3 is self-dual at x = 1, so both branches converge equally fast there
constexpr double omega_switch = 1.0;

}  // namespace detail

/** \brief omega(x) = sum_{n>=1} exp(-pi n^2 x), modular transform below x = 1. */
inline double jacobi_omega(double x) {
  if (!(x > 0)) throw invalid_argument("jacobi_omega: requires x > 0");
  return x < detail::omega_switch ? detail::omega_dual(x) : detail::omega_direct(x);
}

}  // namespace qgraph
