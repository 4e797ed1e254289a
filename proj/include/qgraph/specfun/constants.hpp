#pragma once

#include <cmath>

#include "../core.hpp"
#include "bernoulli.hpp"

namespace qgraph {

/** \brief Euler and Stieltjes constants with the two derived combinations. */
struct ConstantsBundle {
  double gamma;        // Euler constant
  double gamma1;       // first Stieltjes constant
  double gamma_tilde;  // gamma^2 - 2 gamma1
  double D_const;      // 2 gamma1 - pi^2/6 - gamma^2
};

namespace detail {

inline long double harmonic_euler_maclaurin(int N, int K) {
  long double h = 0.0L;
  for (int n = N; n >= 1; --n) h += 1.0L / n;
  long double g = h - std::log((long double)N) - 0.5L / N;
  long double p = 1.0L;
  for (int k = 1; k <= K; ++k) {
    p /= (long double)N * N;
    g += (long double)bernoulli_doubles()[2 * k] / (2 * k) * p;
  }
  return g;
}

/**
 * gamma1 = sum_{l<=N} ln(l)/l - ln^2(N)/2 - f(N)/2 - sum_k B_{2k}/(2k)! f^{(2k-1)}(N)
 * with f(x) = ln(x)/x and f^{(m)}(x) = (-1)^m m! (ln x - H_m) / x^{m+1}.
 */
inline long double stieltjes1_euler_maclaurin(int N, int K) {
  long double s = 0.0L;
  for (int l = N; l >= 2; --l) s += std::log((long double)l) / l;
  const long double lN = std::log((long double)N);
  long double g = s - 0.5L * lN * lN - 0.5L * lN / N;
  long double fact = 1.0L;  // (2k)!
  for (int k = 1; k <= K; ++k) {
    const int m = 2 * k - 1;
    fact *= (long double)(2 * k - 1) * (2 * k);
    long double mfact = 1.0L, hm = 0.0L;
    for (int j = 1; j <= m; ++j) {
      mfact *= j;
      hm += 1.0L / j;
    }
    long double deriv = -mfact * (lN - hm) / std::pow((long double)N, (long double)(m + 1));
    g -= (long double)bernoulli_doubles()[2 * k] / fact * deriv;
  }
  return g;
}

}  // namespace detail

/** \brief Constants computed once by Euler-Maclaurin and cached. */
inline const ConstantsBundle& euler_constants() {
  static const ConstantsBundle c = [] {
    ConstantsBundle b{};
    b.gamma = double(detail::harmonic_euler_maclaurin(200, 8));
    b.gamma1 = double(detail::stieltjes1_euler_maclaurin(200, 8));
    b.gamma_tilde = b.gamma * b.gamma - 2.0 * b.gamma1;
    b.D_const = 2.0 * b.gamma1 - pi * pi / 6.0 - b.gamma * b.gamma;
    return b;
  }();
  return c;
}

}  // namespace qgraph
