#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "arithmetic.hpp"
#include "core.hpp"
#include "quadrature.hpp"
#include "resolvent.hpp"
#include "specfun/bessel.hpp"
#include "specfun/expint.hpp"
#include "wave_trace.hpp"

namespace qgraph {

enum class TestFunctionKind { exp_decay, power_resolvent };

/**
 * \brief Admissible test function for the summation formula.
 *
 * The builtins carry their Taylor coefficients at 0 (odd ones drive the
 * large-n behaviour of the kernel integrals) and the divisor tail of the
 * left side.  Bounded variation is a declared property, not checked.
 */
struct TestFunction {
  std::string id;
  TestFunctionKind kind = TestFunctionKind::exp_decay;
  double p1 = 1.0;  // t, or s
  double p2 = 0.0;  // unused, or k0
  std::function<double(double)> eval;
  double eval_at_zero = 0.0;
  double decay_exponent = 0.0;
  std::function<double(int)> taylor;  // f^{(j)}(0)/j!

  void validate() const {
    if (!eval || !taylor) throw invalid_argument("TestFunction: incomplete definition");
    if (!(decay_exponent > 0.5)) throw invalid_argument("TestFunction: decay exponent must exceed 1/2");
  }
};

/** \brief f(k) = e^{-tk}. */
inline TestFunction exp_decay(double t) {
  if (!(t > 0)) throw invalid_argument("exp_decay: requires t > 0");
  TestFunction f;
  f.id = "exp_decay";
  f.kind = TestFunctionKind::exp_decay;
  f.p1 = t;
  f.eval = [t](double k) { return std::exp(-t * k); };
  f.eval_at_zero = 1.0;
  f.decay_exponent = INFINITY;
  f.taylor = [t](int j) { return std::pow(-t, j) / std::tgamma(j + 1.0); };
  return f;
}

/** \brief f(k) = (k^2 + k0^2)^{-s}, s > 1/2 so that the divisor sum converges. */
inline TestFunction power_resolvent(double s, double k0) {
  if (!(s > 0.5) || !(k0 > 0)) throw invalid_argument("power_resolvent: requires s > 1/2, k0 > 0");
  TestFunction f;
  f.id = "power_resolvent";
  f.kind = TestFunctionKind::power_resolvent;
  f.p1 = s;
  f.p2 = k0;
  f.eval = [s, k0](double k) { return std::pow(k * k + k0 * k0, -s); };
  f.eval_at_zero = std::pow(k0, -2.0 * s);
  f.decay_exponent = 2.0 * s;
  // even in k
  f.taylor = [s, k0](int j) {
    if (j % 2) return 0.0;
    const int m = j / 2;
    double b = 1.0;  // binom(-s, m)
    for (int i = 0; i < m; ++i) b *= (-s - i) / double(i + 1);
    return b * std::pow(k0, -2.0 * s - 2.0 * m);
  };
  return f;
}

/** \brief sum d(n) f(n). */
inline EvalResult voronoi_lhs(const TestFunction& f, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  f.validate();
  ctrl.validate();
  if (f.kind == TestFunctionKind::exp_decay)
    return detail::divisor_weighted_sum([&](double n) { return cplx(f.eval(n)); }, table, ctrl, "voronoi_lhs");
  // explicit part, then sum_j binom(-s, j) k0^{2j} T_{2s+2j}(N)
  const double s = f.p1, k0 = f.p2;
  const std::size_t N = detail::spectral_cutoff(k0, table, "voronoi_lhs");
  CompensatedSum<double> sum;
  for (std::size_t n = N; n >= 1; --n) sum += double(table[n]) * f.eval(double(n));
  double b = 1.0, tail = 0.0;
  for (int j = 0; j < 40; ++j) {
    const double p = 2.0 * s + 2.0 * j;
    const double T = (p == std::floor(p) && p <= DivisorTable::max_tail_order)
                         ? table.tail(int(p), N)
                         : table.tail(cplx(p, 0.0), N).real();
    const double term = b * std::pow(k0, 2.0 * j) * T;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    b *= (-s - j) / double(j + 1);
  }
  const double v = sum.value() + tail;
  return {v, 1e-15 * std::sqrt(double(N)) * std::abs(v), N, true};
}

/** \brief int_0^inf (ln k + 2 gamma) f(k) dk, through k = u^2. */
inline EvalResult voronoi_weyl_integral(const TestFunction& f, const SeriesControl& ctrl = {}) {
  f.validate();
  auto g = [&](double u) {
    if (u == 0.0) return 0.0;
    return (2.0 * std::log(u) + 2.0 * euler_gamma) * f.eval(u * u) * 2.0 * u;
  };
  auto r = quad::integrate_pieces(g, {0.0, 1.0, INFINITY}, std::max(ctrl.tol, 1e-14));
  return {r.value, r.error, 0, r.error <= std::max(ctrl.tol, 1e-12) * std::max(1.0, std::abs(r.value))};
}

/** \brief Closed form of the Weyl integral where one is known. */
inline std::optional<double> voronoi_weyl_closed_form(const TestFunction& f) {
  if (f.kind == TestFunctionKind::exp_decay) return (euler_gamma - std::log(f.p1)) / f.p1;
  const double s = f.p1, k0 = f.p2;
  if (s == 1.0) return pi / (2.0 * k0) * (std::log(k0) + 2.0 * euler_gamma);
  if (s == 2.0) return pi / (4.0 * k0 * k0 * k0) * (std::log(k0) + 2.0 * euler_gamma - 1.0);
  return std::nullopt;
}

/**
 * \brief 2 pi int_0^inf [(2/pi) K0(4 pi sqrt(nk)) - Y0(4 pi sqrt(nk))] f(k) dk, through k = y^2,
 * with the oscillatory part accelerated panel by panel.
 */
inline EvalResult voronoi_kernel_integral(const TestFunction& f, std::size_t n, const SeriesControl& ctrl = {}) {
  f.validate();
  if (n == 0) throw invalid_argument("voronoi_kernel_integral: n must be at least 1");
  const double c = 4.0 * pi * std::sqrt(double(n));
  auto g = [&](double y) {
    if (y == 0.0) return 0.0;
    const double z = c * y;
    const double k0 = z < 700.0 ? bessel_k0(z) : 0.0;
    return 4.0 * pi * y * ((2.0 / pi) * k0 - bessel_y0(z)) * f.eval(y * y);
  };
  const double tol = std::max(ctrl.tol, 1e-13);
  auto r = quad::integrate_oscillatory(g, 0.0, 0.8935769662791675 / c, pi / c, 1e-10, 200000, 0.01 * tol);
  return {r.value, r.error, 0, std::isfinite(r.error)};
}

/** \brief Closed form of the kernel integral where one is known. */
inline std::optional<double> voronoi_kernel_closed_form(const TestFunction& f, std::size_t n) {
  if (f.kind == TestFunctionKind::exp_decay) {
    const double t = f.p1;
    return 2.0 / t * po_bracket(4.0 * pi * pi * double(n) / t);
  }
  if (f.p1 == 1.0) return 4.0 * pi / f.p2 * kelvin(KelvinKind::ker, 4.0 * pi * std::sqrt(double(n) * f.p2));
  return std::nullopt;
}

namespace detail {

// large-n expansion: sum_m f^{(2m+1)}(0) (2m+1)! 4/(4 pi^2)^{2m+2} * w_m, optimally truncated;
// w_m = n^{-2m-2} for a single term or T_{2m+2}(N) for the tail
template <class W>
double kernel_moment_series(const TestFunction& f, W&& w, double* last_term) {
  double sum = 0.0, prev = INFINITY, fact = 1.0;  // (2m+1)!
  const double q = 4.0 * pi * pi;
  double qp = q * q;
  *last_term = 0.0;
  for (int m = 0; 2 * m + 2 <= DivisorTable::max_tail_order; ++m) {
    const double a = f.taylor(2 * m + 1);
    const double term = a * fact * fact * 4.0 / qp * w(m);
    if (std::abs(term) > std::abs(prev) && a != 0.0) break;
    sum += term;
    *last_term = std::abs(term);
    if (a != 0.0) prev = term;
    fact *= double(2 * m + 2) * (2 * m + 3);
    qp *= q * q;
    if (a != 0.0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/**
 * \brief Weyl integral + f(0)/4 + sum_n d(n) (kernel integral).  Integrals are
 * done per n until three consecutive ones agree with the moment expansion to
 * tol/10; the rest is the moment expansion against divisor tails.
 */
inline EvalResult voronoi_rhs(const TestFunction& f, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  f.validate();
  ctrl.validate();
  const double tol = std::max(ctrl.tol, 1e-12);
  auto weyl = voronoi_weyl_integral(f, ctrl);
  CompensatedSum<double> s;
  s += weyl.real();
  s += 0.25 * f.eval_at_zero;
  double err = weyl.err_estimate;
  std::size_t small = 0, n = 1;
  bool ok = weyl.converged;
  for (;; ++n) {
    if (n > ctrl.max_terms || n + 1 > table.limit())
      throw convergence_failure("voronoi_rhs: kernel series did not settle", {s.value(), INFINITY, n, false});
    auto r = voronoi_kernel_integral(f, n, ctrl);
    ok = ok && r.converged;
    s += double(table[n]) * r.real();
    err += double(table[n]) * r.err_estimate;
    double last = 0.0;
    const double asym = detail::kernel_moment_series(
        f, [&](int m) { return std::pow(double(n), -2.0 * m - 2.0); }, &last);
    if (std::abs(r.real() - asym) < 0.1 * tol && last < 0.1 * tol) {
      if (++small >= ctrl.consecutive_small) break;
    } else {
      small = 0;
    }
  }
  double last = 0.0;
  const double tail = detail::kernel_moment_series(f, [&](int m) { return table.tail(2 * m + 2, n); }, &last);
  s += tail;
  err += last + 0.1 * tol;
  return {s.value(), err, n, ok};
}

/** \brief |lhs - rhs|. */
inline double voronoi_residual(const TestFunction& f, const DivisorTable& table, const SeriesControl& ctrl = {}) {
  auto l = voronoi_lhs(f, table, ctrl);
  auto r = voronoi_rhs(f, table, ctrl);
  return std::abs(l.value.real() - r.value.real());
}

}  // namespace qgraph
