#pragma once

#include <cmath>
#include <complex>

#include "../core.hpp"
#include "bernoulli.hpp"

namespace qgraph {

/**
 * \brief log Gamma(z) for complex z off the poles.
 *
 * Upward recurrence to Re z >= 12, Stirling series with Bernoulli numbers,
 * reflection for Re z < 0.5.  The imaginary part is a continuous branch
 * along the recurrence path, not necessarily the principal value.
 */
inline cplx lgamma_c(cplx z) {
  if (is_nonpositive_integer(z)) throw pole_error("lgamma_c: pole at nonpositive integer");
  if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
  if (z.real() < 0.5) {
    // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_c(1.0 - z);
  }
  cplx shift = 0.0;
  while (z.real() < 12.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const auto& b = detail::bernoulli_doubles();
  cplx zi = 1.0 / z, zi2 = zi * zi, sum = 0.0, p = zi;
  for (int k = 1; k <= 12; ++k) {
    sum += b[2 * k] / double(2 * k * (2 * k - 1)) * p;
    p *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * ln2pi + sum - shift;
}

/** \brief Digamma psi(z) for complex z off the poles. */
inline cplx digamma(cplx z) {
  if (is_nonpositive_integer(z)) throw pole_error("digamma: pole at nonpositive integer");
  if (z.real() < 0.5) return digamma(1.0 - z) - pi / std::tan(pi * z);
  cplx shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const auto& b = detail::bernoulli_doubles();
  cplx zi2 = 1.0 / (z * z), p = zi2, sum = 0.0;
  for (int k = 1; k <= 12; ++k) {
    sum += b[2 * k] / double(2 * k) * p;
    p *= zi2;
  }
  return std::log(z) - 0.5 / z - sum + shift;
}

inline double digamma(double x) { return digamma(cplx(x, 0.0)).real(); }

}  // namespace qgraph
