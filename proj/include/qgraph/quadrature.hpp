#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "core.hpp"

namespace qgraph::quad {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
};

/** \brief Adaptive Gauss-Kronrod on [a,b]; b may be +infinity.  tol is relative. */
template <class F>
auto integrate(F&& f, double a, double b, double tol = 1e-13, unsigned max_depth = 18) {
  using R = decltype(f(a));
  double err = 0.0, l1 = 0.0;
  R v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol,
                                                                      &err, &l1);
  return QuadResult<R>{v, err};
}

/** \brief Sum of adaptive integrals over consecutive intervals between breakpoints. */
template <class F>
auto integrate_pieces(F&& f, const std::vector<double>& pts, double tol = 1e-13,
                      unsigned max_depth = 18) {
  using R = decltype(f(pts.front()));
  CompensatedSum<R> s;
  double e = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i] > pts[i - 1])) continue;
    auto r = integrate(f, pts[i - 1], pts[i], tol, max_depth);
    s += r.value;
    e += r.error;
  }
  return QuadResult<R>{s.value(), e};
}

/**
 * \brief Integral over [a, infinity) of an oscillating integrand.
 *
 * Splits at a + j*half_period, forms partial sums and accelerates them by
 * repeated averaging (Euler transform of the alternating panel series).
 * tol is relative to the result, abs_tol an absolute floor.
 */
template <class F>
QuadResult<double> integrate_oscillatory(F&& f, double a, double first, double half_period,
                                         double tol = 1e-13, std::size_t max_panels = 200000,
                                         double abs_tol = 0.0) {
  CompensatedSum<double> s;
  auto head = integrate(f, a, first, tol);
  s += head.value;
  double err = head.error;
  std::vector<double> partial;
  double x = first, best = 0.0, prev_best = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;
  for (std::size_t j = 0; j < max_panels; ++j) {
    auto r = integrate(f, x, x + half_period, tol);
    s += r.value;
    err += r.error;
    x += half_period;
    partial.push_back(s.value());
    if (partial.size() >= 12) {
      std::vector<double> w(partial.end() - 12, partial.end());
      for (int lvl = 0; lvl < 10; ++lvl)
        for (std::size_t i = 0; i + 1 < w.size() - lvl; ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
      best = w[0];
      if (std::abs(best - prev_best) <= std::max(tol * std::abs(best), abs_tol)) {
        if (++stable >= 3) return {best, err + std::abs(best - prev_best)};
      } else {
        stable = 0;
      }
      prev_best = best;
    }
  }
  return {best, std::numeric_limits<double>::infinity()};
}

}  // namespace qgraph::quad
