#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace qgraph {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double ln2pi = 1.8378770664093454836;

class invalid_argument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/** \brief Evaluation at a pole or logarithmic singularity. */
class pole_error : public domain_error {
public:
  using domain_error::domain_error;
};

/** \brief Grid point on the resonance set of the chain recursion. */
class resonance_error : public domain_error {
public:
  using domain_error::domain_error;
};

class out_of_range : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

enum class Acceleration { none, gauss_smooth };

/** \brief Truncation policy shared by every series and limit. */
struct SeriesControl {
  double tol = 1e-12;
  std::size_t max_terms = 1000000;
  std::size_t consecutive_small = 3;
  std::vector<double> eps_schedule{1e-2, 5e-3, 2.5e-3};
  Acceleration acceleration = Acceleration::gauss_smooth;

  void validate() const {
    if (!(tol > 0)) throw invalid_argument("SeriesControl: tol must be positive");
    if (max_terms < 10) throw invalid_argument("SeriesControl: max_terms must be at least 10");
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
      if (!(eps_schedule[i] < eps_schedule[i - 1]))
        throw invalid_argument("SeriesControl: eps_schedule must be strictly decreasing");
    for (double e : eps_schedule)
      if (!(e > 0)) throw invalid_argument("SeriesControl: eps values must be positive");
  }
};

struct EvalResult {
  cplx value{};
  double err_estimate = 0.0;
  std::size_t terms_used = 0;
  bool converged = true;

  double real() const { return value.real(); }
  double imag() const { return value.imag(); }
};

class convergence_failure : public std::runtime_error {
public:
  convergence_failure(const std::string& what, EvalResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const EvalResult& partial() const noexcept { return partial_; }

private:
  EvalResult partial_;
};

/** \brief Neumaier compensated accumulator, real or complex. */
template <class T>
class CompensatedSum {
public:
  CompensatedSum& operator+=(const T& x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

private:
  T sum_{};
  T comp_{};

  static void step(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(const T& x) {
    if constexpr (std::is_same_v<T, cplx>) {
      double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
      step(sr, cr, x.real());
      step(si, ci, x.imag());
      sum_ = cplx(sr, si);
      comp_ = cplx(cr, ci);
    } else {
      step(sum_, comp_, x);
    }
  }
};

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

/** \brief exp(w) - 1 without cancellation for small |w|. */
inline std::complex<double> expm1_c(std::complex<double> w) {
  const double a = w.real(), b = w.imag();
  const double sb2 = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * sb2 * sb2, std::exp(a) * std::sin(b)};
}

/** \brief log(1+w) without cancellation for small |w|. */
inline cplx log1p_c(cplx w) {
  if (std::abs(w) < 1e-3) {
    cplx term = w, sum = 0.0;
    for (int j = 1; j < 30; ++j) {
      cplx add = term / double(j);
      sum += (j % 2 ? add : -add);
      term *= w;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  if (w.imag() == 0.0 && w.real() > -1.0) return std::log1p(w.real());
  return std::log(1.0 + w);
}

/**
 * \brief Polynomial extrapolation of f(h) to h = 0 (Neville).
 *
 * Assumes f(h) = f0 + c1 h^q + c2 h^{2q} + ... for the given exponent step q.
 */
inline cplx richardson(const std::vector<double>& h, std::vector<cplx> f, double q = 1.0,
                       double* err = nullptr) {
  const std::size_t n = h.size();
  if (n == 0 || f.size() != n) throw invalid_argument("richardson: size mismatch");
  cplx prev = f[0];
  for (std::size_t level = 1; level < n; ++level) {
    prev = f[n - 1];
    for (std::size_t i = n - 1; i >= level; --i) {
      double a = std::pow(h[i - level], q), b = std::pow(h[i], q);
      f[i] = (a * f[i] - b * f[i - 1]) / (a - b);
    }
  }
  if (err) *err = n > 1 ? std::abs(f[n - 1] - prev) : std::abs(f[0]);
  return f[n - 1];
}

}  // namespace qgraph
