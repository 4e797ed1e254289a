#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "core.hpp"

namespace qgraph {

enum class Closure { dirichlet, neumann };

/** \brief delta-coupled chain with edge lengths pi/n, truncated to N edges. */
struct ChainSpec {
  double kappa = 0.0;
  std::size_t edges = 2;
  double k_min = 0.5;
  double k_max = 1.5;
  std::size_t grid = 2000;
  Closure closure = Closure::dirichlet;

  void validate() const {
    if (!(kappa >= 0)) throw invalid_argument("ChainSpec: kappa must be nonnegative");
    if (edges < 2) throw invalid_argument("ChainSpec: need at least two edges");
    if (!(k_min > 0) || !(k_max > k_min)) throw invalid_argument("ChainSpec: need 0 < k_min < k_max");
    if (grid < 2) throw invalid_argument("ChainSpec: grid must be at least 2");
  }
};

struct TransferCoefficients {
  double A = 0.0;
  double B = 0.0;
};

struct ChainRoot {
  double k = 0.0;
  double bracket_width = 0.0;
};

struct ChainSpectrum {
  std::vector<ChainRoot> roots;
  bool unresolved = false;  // roots found in adjacent grid cells
};

namespace detail {

inline constexpr double resonance_guard = 1e-9;
inline constexpr double resonance_nudge = 1e-8;

// distance of k pi/n from the nearest multiple of pi, in units of k
inline bool near_resonance(double k, std::size_t n, double guard) {
  const double q = k / double(n);
  return std::abs(q - std::round(q)) * double(n) <= guard;
}

inline bool near_resonance_set(double k, std::size_t N, double guard) {
  for (std::size_t n = 1; n <= N; ++n)
    if (near_resonance(k, n, guard)) return true;
  return false;
}

}  // namespace detail

/** \brief A_n(k), B_n(k) of the transfer recursion. */
inline TransferCoefficients transfer_coefficients(std::size_t n, double k, double kappa) {
  if (n == 0) throw invalid_argument("transfer_coefficients: n must be at least 1");
  if (!(k > 0)) throw invalid_argument("transfer_coefficients: requires k > 0");
  if (!(kappa >= 0)) throw invalid_argument("transfer_coefficients: requires kappa >= 0");
  if (detail::near_resonance(k, n, 0.0) || detail::near_resonance(k, n + 1, 0.0))
    throw resonance_error("transfer_coefficients: k pi/n on a multiple of pi");
  const double s0 = std::sin(k * pi / double(n)), s1 = std::sin(k * pi / double(n + 1));
  const double c0 = std::cos(k * pi / double(n)), c1 = std::cos(k * pi / double(n + 1));
  return {(kappa / k + c0 / s0 + c1 / s1) * s1, -s1 / s0};
}

/** \brief a_0 = 0, a_1 = 1, a_{n+1} = A_n a_n + B_n a_{n-1} for n < N. */
inline std::vector<double> recursion_solve(double k, double kappa, std::size_t N, double a1 = 1.0) {
  if (N < 1) throw invalid_argument("recursion_solve: N must be at least 1");
  std::vector<double> a(N + 1, 0.0);
  a[1] = a1;
  for (std::size_t n = 1; n < N; ++n) {
    auto c = transfer_coefficients(n, k, kappa);
    a[n + 1] = c.A * a[n] + c.B * a[n - 1];
  }
  return a;
}

/** \brief Last pair (a_{N-1}, a_N) rescaled step by step to max modulus 1. */
struct ScaledTail {
  double prev = 0.0;
  double last = 0.0;
  double log_scale = 0.0;
};

inline ScaledTail recursion_scaled(double k, double kappa, std::size_t N) {
  if (N < 1) throw invalid_argument("recursion_solve: N must be at least 1");
  double am = 0.0, a = 1.0, ls = 0.0;
  for (std::size_t n = 1; n < N; ++n) {
    auto c = transfer_coefficients(n, k, kappa);
    const double next = c.A * a + c.B * am;
    const double m = std::max(std::abs(a), std::abs(next));
    am = a / m;
    a = next / m;
    ls += std::log(m);
  }
  return {am, a, ls};
}

/**
 * \brief Closure condition of the truncated chain: the rescaled a_N
 * (Dirichlet) or a_N cos(k pi/N) - a_{N-1} (Neumann).  Grid points within
 * 1e-9 of the resonance set are nudged by 1e-8.
 */
inline double secular_value(double k, const ChainSpec& spec) {
  spec.validate();
  if (!(k > 0)) throw invalid_argument("secular_value: requires k > 0");
  if (detail::near_resonance_set(k, spec.edges, detail::resonance_guard)) k += detail::resonance_nudge;
  auto t = recursion_scaled(k, spec.kappa, spec.edges);
  if (spec.closure == Closure::dirichlet) return t.last;
  return t.last * std::cos(k * pi / double(spec.edges)) - t.prev;
}

/**
 * \brief Sign changes of secular_value on the window, bisected to width
 * <= tol.  The only poles sit on the integers (the resonance set); guard
 * points at m +- 1e-7 isolate them and those cells are skipped.
 */
inline ChainSpectrum spectrum(const ChainSpec& spec, const SeriesControl& ctrl = {}) {
  spec.validate();
  ctrl.validate();
  std::vector<double> xs;
  const double h = (spec.k_max - spec.k_min) / double(spec.grid);
  for (std::size_t i = 0; i <= spec.grid; ++i) xs.push_back(spec.k_min + h * double(i));
  // every resonance m n with n <= N is an integer; for large kappa the roots
  // cluster just below them, so the grid is also graded geometrically there
  for (double m = std::ceil(spec.k_min); m <= spec.k_max; m += 1.0) {
    for (double d = 0.25; d > 5 * detail::resonance_nudge; d *= std::pow(10.0, -0.125)) {
      xs.push_back(m - d);
      xs.push_back(m + d);
    }
    xs.push_back(m - 10 * detail::resonance_nudge);
    xs.push_back(m + 10 * detail::resonance_nudge);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::remove_if(xs.begin(), xs.end(),
                          [&](double x) { return x < spec.k_min || x > spec.k_max; }),
           xs.end());

  ChainSpectrum out;
  auto f = [&](double x) { return secular_value(x, spec); };
  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
  std::size_t last_cell = std::size_t(-2);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double a = xs[i], b = xs[i + 1], fa = fx[i], fb = fx[i + 1];
    if (fa == 0.0) {
      out.roots.push_back({a, 0.0});
      continue;
    }
    if ((fa > 0) == (fb > 0)) continue;
    // a pole between integer guards is not a root
    if (std::floor(a) != std::floor(b)) continue;
    if (last_cell + 1 == i) out.unresolved = true;
    last_cell = i;
    for (int it = 0; it < 200 && b - a > ctrl.tol; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    out.roots.push_back({0.5 * (a + b), b - a});
  }
  return out;
}

}  // namespace qgraph
