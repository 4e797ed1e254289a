#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

#include "../core.hpp"

namespace qgraph {

namespace detail {

/** \brief Exact B_0..B_n with B_1 = -1/2, from sum_{j<=m} C(m+1,j) B_j = 0. */
inline std::vector<boost::multiprecision::cpp_rational> bernoulli_rationals(std::size_t n) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  std::vector<cpp_rational> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    if (m > 1 && m % 2 == 1) {
      b[m] = 0;
      continue;
    }
    cpp_rational s = 0;
    cpp_int c = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      s += cpp_rational(c) * b[j];
      c = c * cpp_int(m + 1 - j) / cpp_int(j + 1);
    }
    b[m] = -s / cpp_rational(cpp_int(m + 1));
  }
  return b;
}

inline constexpr std::size_t bernoulli_exact_limit = 160;

inline const std::vector<boost::multiprecision::cpp_rational>& bernoulli_table() {
  static const std::vector<boost::multiprecision::cpp_rational> t =
      bernoulli_rationals(bernoulli_exact_limit);
  return t;
}

inline const std::vector<double>& bernoulli_doubles() {
  static const std::vector<double> t = [] {
    const auto& r = bernoulli_table();
    std::vector<double> d(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) d[i] = static_cast<double>(r[i]);
    return d;
  }();
  return t;
}

}  // namespace detail

/** \brief Exact rational Bernoulli number, n <= 160. */
inline const boost::multiprecision::cpp_rational& bernoulli_exact(std::size_t n) {
  if (n > detail::bernoulli_exact_limit) throw out_of_range("bernoulli_exact: n too large");
  return detail::bernoulli_table()[n];
}

/** \brief Bernoulli number converted to an arbitrary floating type. */
template <class Real>
Real bernoulli_as(std::size_t n) {
  const auto& r = bernoulli_exact(n);
  return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
}

/**
 * \brief B_n in double precision.
 *
 * Exact rationals up to n = 60, then B_{2m} = 2(2m)!(-1)^{m+1} zeta(2m)/(2 pi)^{2m}.
 */
inline double bernoulli(std::size_t n) {
  if (n == 1) return -0.5;
  if (n > 1 && n % 2 == 1) return 0.0;
  if (n <= 60) return detail::bernoulli_doubles()[n];
  const std::size_t m = n / 2;
  double zeta_n = 1.0;
  for (int j = 2; j < 8; ++j) zeta_n += std::pow(double(j), -double(n));
  double lg = std::lgamma(double(n) + 1.0) - double(n) * std::log(2.0 * pi);
  double mag = 2.0 * std::exp(lg) * zeta_n;
  return (m % 2 == 1) ? mag : -mag;
}

}  // namespace qgraph
