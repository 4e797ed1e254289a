#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arithmetic.hpp"
#include "determinant_selberg.hpp"
#include "kappa_chain.hpp"
#include "resolvent.hpp"
#include "voronoi.hpp"
#include "wave_trace.hpp"
#include "zeta_gamma.hpp"

namespace qgraph {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

namespace selftest {

// worst observed value of a statistic against its bound
struct Check {
  bool ok = true;
  std::ostringstream msg;

  void le(const std::string& what, double value, double bound) {
    const bool good = value <= bound;  // NaN fails
    ok = ok && good;
    msg << what << '=' << value << (good ? " <= " : " > ") << bound << "; ";
  }
  void that(const std::string& what, bool good) {
    ok = ok && good;
    msg << what << (good ? " ok; " : " FAILED; ");
  }
};

inline std::string num(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline Check arithmetic(const DivisorTable& table) {
  Check c;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1000000);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    auto n = pick(rng);
    if (table.d(n) != divisor_count_trial(n)) ++bad;
  }
  c.le("sieve mismatches", double(bad), 0);
  c.that("N(10)=27", counting_function(10, table) == 27);
  c.that("N(100)=482", counting_function(100, table) == 482);
  std::uniform_real_distribution<double> px(1.0, 100000.0);
  bad = 0;
  for (int i = 0; i < 50; ++i) {
    const double x = px(rng);
    const auto m = static_cast<std::uint64_t>(std::floor(x));
    std::uint64_t brute = 0;
    for (std::uint64_t j = 1; j <= m; ++j) brute += m / j;  // pairs (j, l) with j l <= m
    if (brute != counting_function(x, table)) ++bad;
  }
  c.le("N(x) mismatches", double(bad), 0);
  return c;
}

inline Check trace_identity(const DivisorTable& table) {
  Check c;
  double worst = 0.0;
  for (double t : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double th = theta_direct(t, table).real();
    const double r = std::abs(theta_weyl(t) + theta_po(t, table).real() - th) / std::max(1.0, th);
    worst = std::max(worst, r);
  }
  c.le("max scaled residual", worst, 1e-8);
  return c;
}

inline Check asymptotic_expansion(const DivisorTable& table) {
  Check c;
  for (double t : {1e-2, 1e-3}) {
    const double th = theta_direct(t, table).real();
    c.le("rel err/(10 t^4) at t=" + num(t),
         std::abs(theta_asymptotic(t, 3) - th) / th / (10 * std::pow(t, 4)), 1.0);
  }
  using R = boost::multiprecision::cpp_bin_float_50;
  const R t = R(1) / 2;
  const R th = theta_direct_as<R>(t, table, R("1e-52"));
  std::vector<double> err;
  for (unsigned M = 90; M <= 150; M += 10) err.push_back(static_cast<double>(abs(theta_asymptotic<R>(t, M) - th)));
  bool mono = true;
  for (std::size_t i = 1; i < err.size(); ++i) mono = mono && err[i] >= err[i - 1];
  c.that("t=0.5 error non-decreasing for M=90..150", mono);
  c.le("t=0.5 err(M=90)/err(M=150)", err.front() / err.back(), 1.0);
  return c;
}

inline Check resolvent_triple(const DivisorTable& table) {
  Check c;
  double w1 = 0.0, w2 = 0.0;
  for (int j = 1; j <= 9; ++j) {
    const double k = 0.1 * j;
    auto d = resolvent_trace_direct(k, table).value;
    w1 = std::max({w1, std::abs(d - resolvent_trace_po(k).value), std::abs(d - resolvent_trace_series(k).value)});
  }
  for (double k : {1.0, 2.0, 5.0, 10.0})
    w2 = std::max(w2, std::abs(resolvent_trace_direct(k, table).value - resolvent_trace_po(k).value));
  c.le("k<1 max diff", w1, 1e-10);
  c.le("k>=1 direct-po", w2, 1e-9);
  const double z2 = pi * pi / 6;
  c.le("|T(0)-zeta(2)^2|", std::abs(resolvent_trace_direct(0.0, table).real() - z2 * z2), 1e-12);
  return c;
}

inline Check tau_triple(const DivisorTable& table) {
  Check c;
  double w = 0.0;
  for (int j = 1; j <= 9; ++j) {
    const double k = 0.1 * j;
    auto d = tau(k, table, {}, TauRepr::direct).value;
    w = std::max({w, std::abs(d - tau(k, table, {}, TauRepr::digamma).value),
                  std::abs(d - tau(k, table, {}, TauRepr::series).value)});
  }
  c.le("max diff", w, 1e-10);
  const double a = tau_asymptotic(1000.0), d = tau(1000.0, table).real();
  c.le("k=1000 rel asymptotic err", std::abs(d - a) / std::abs(d), 1e-3);
  return c;
}

inline Check determinant(const DivisorTable& table) {
  Check c;
  double w = 0.0;
  for (double k : {0.3, 0.7, 1.3, 2.1, 5.0}) {
    auto a = det_weierstrass(k, table).value;
    w = std::max({w, rel(det_sinh_product(k).value, a), rel(det_via_gamma(k, table).value, a)});
  }
  c.le("three-way rel", w, 1e-8);
  c.le("|D(0)-1/2pi|", std::abs(det_weierstrass(0.0, table).real() - 0.5 / pi), 1e-14);
  double wd = 0.0;
  for (double k : {0.5, 1.5, 3.0}) {
    const double h = 1e-4;
    const double fd = (log_det_weierstrass(k + h, table).real() - log_det_weierstrass(k - h, table).real()) / (2 * h);
    wd = std::max(wd, std::abs(fd - 2 * k * resolvent_trace_direct(k, table).real()));
  }
  c.le("log-derivative", wd, 1e-6);
  return c;
}

/** \brief Local exponent of |D| at k = in from two offsets. */
inline double zero_order(int n, const DivisorTable& table, double d1 = 1e-3, double d2 = 1e-4) {
  const double l1 = log_det_weierstrass(cplx(d1, n), table).real();
  const double l2 = log_det_weierstrass(cplx(d2, n), table).real();
  return (l1 - l2) / (std::log(d1) - std::log(d2));
}

inline Check zero_orders(const DivisorTable& table) {
  Check c;
  for (int n : {1, 2, 4, 6})
    c.le("|order-d(" + std::to_string(n) + ")|", std::abs(zero_order(n, table) - table.d(n)), 0.05);
  return c;
}

inline std::vector<double> critical_grid() {
  std::vector<double> g;
  for (int j = 0; j < 10; ++j) {
    g.push_back(j + 0.25);
    g.push_back(j + 0.5);
  }
  return g;
}

inline Check selberg(const DivisorTable& table) {
  Check c;
  double w = 0.0;
  for (double s : {0.5, 1.0, 2.0, 5.0}) {
    auto a = std::exp(log_selberg_z_series(s, table).value);
    auto b = std::exp(log_selberg_z_determinant(s, table).value);
    w = std::max(w, std::abs(a - b));
  }
  c.le("series vs determinant", w, 1e-8);
  c.le("|Z(10)-1|", std::abs(selberg_z(10.0, table).value - 1.0), 1e-6);
  double fe = 0.0, hz = 0.0;
  for (double k : critical_grid()) {
    fe = std::max(fe, functional_equation_residual(k, table));
    hz = std::max(hz, hardy_z(k, table).imag_diagnostic);
  }
  c.le("functional equation", fe, 1e-5);
  c.le("Hardy imag", hz, 1e-5);
  return c;
}

inline Check counting(const DivisorTable& table) {
  Check c;
  for (double k : {3.5, 6.5, 10.5})
    c.le("Z-route k=" + num(k),
         std::abs(counting_reconstruction(k, table).real() - double(counting_function(k, table))), 0.05);
  c.le("D-route k=6", std::abs(counting_reconstruction_determinant(6.0, table).real() - 12.0), 0.05);
  for (double x : {3.5, 10.5})
    c.le("n_osc x=" + num(x),
         std::abs(n_osc_bessel(x, table).real() - (double(counting_function(x, table)) - weyl_counting_term(x))), 0.02);
  return c;
}

inline Check voronoi(const DivisorTable& table) {
  Check c;
  double w = 0.0;
  for (double t : {0.2, 0.5, 1.0, 2.0, 5.0}) w = std::max(w, voronoi_residual(exp_decay(t), table));
  for (auto p : {std::pair{1.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}})
    w = std::max(w, voronoi_residual(power_resolvent(p.first, p.second), table));
  c.le("max residual", w, 1e-6);
  return c;
}

/** \brief I** from a one-parameter least-squares fit of the small-t heat trace. */
inline double fit_heat_constant(const DivisorTable& table) {
  // T - 1/4 = sqrt(pi/t) (I - ln(t/pi)/4)
  double num = 0.0, den = 0.0;
  for (double t : {1e-2, 5e-3, 2e-3, 1e-3}) {
    const double a = std::sqrt(pi / t);
    const double y = heat_trace(t, 0.0, table).real() - 0.25 + a * 0.25 * std::log(t / pi);
    num += a * y;
    den += a * a;
  }
  return num / den;
}

inline Check heat_mellin(const DivisorTable& table) {
  Check c;
  double w = 0.0;
  for (double z : {2.0, 3.0, 4.0}) {
    const double zz = riemann_zeta(z);
    w = std::max(w, std::abs(mellin_check(z, table).value - zz * zz));
  }
  c.le("Mellin", w, 1e-8);
  c.le("I** fit", std::abs(fit_heat_constant(table) - heat_constant()), 1e-6);
  return c;
}

inline Check finite_parts(const DivisorTable& table) {
  Check c;
  const auto& e = euler_constants();
  c.le("Fp zeta^2", std::abs(finite_part_zeta_sq_numeric().real() - (e.gamma * e.gamma - 2 * e.gamma1)), 1e-8);
  double w = 0.0;
  for (double k : {0.25, 0.5, 0.75})
    w = std::max(w, std::abs(finite_part_zhat(k, table).value + psi_tilde(k, table).value));
  c.le("Fp Zhat + psi~", w, 1e-7);
  return c;
}

inline Check stirling(const DivisorTable& table) {
  Check c;
  std::vector<double> r;
  for (int i = 0; i < 8; ++i) {
    const double k = 30.0 + 10.0 * i;
    r.push_back(log_gamma_tilde(k, table, {}, GammaRepr::integral).real() - gamma_tilde_stirling(k));
  }
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  c.le("max |remainder|", m, 2.0);
  // no growth: spread over the window small against the bound
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  c.le("remainder spread", *hi - *lo, 0.01);
  return c;
}

inline Check kappa(const DivisorTable&) {
  Check c;
  ChainSpec s{1e4, 40, 0.5, 1.5, 2000};
  auto sp = spectrum(s);
  c.le("root count - 1", std::abs(double(sp.roots.size()) - 1.0), 0.0);
  if (!sp.roots.empty()) c.le("|root-1|", std::abs(sp.roots[0].k - 1.0), 0.01);
  std::vector<double> dist;
  for (double kap : {1e2, 1e3, 1e4}) {
    s.kappa = kap;
    auto r = spectrum(s);
    dist.push_back(r.roots.empty() ? INFINITY : std::abs(r.roots.front().k - 1.0));
  }
  c.that("distance decreasing in kappa", dist[0] > dist[1] && dist[1] > dist[2]);
  return c;
}

inline Check log_det(const DivisorTable& table) {
  Check c;
  c.le("s=50 |lnD - Weyl|", std::abs(log_det_weierstrass(50.0, table).real() - log_det_weyl(50.0)), 1e-4);
  double with = 0.0, without = 0.0;
  for (double s : {2.0, 3.0, 4.0, 5.0}) {
    const double l = log_det_weierstrass(s, table).real();
    with += std::abs(l - log_det_asymptotic(s)) / 4;
    without += std::abs(l - log_det_weyl(s)) / 4;
  }
  c.le("mean residual with/without oscillatory term", with / without, 1.0 - 1e-12);
  return c;
}

struct Entry {
  int id;
  const char* name;
  double limit;
  Check (*run)(const DivisorTable&);
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {1, "exact arithmetic", 10, [](const DivisorTable& t) { return arithmetic(t); }},
      {2, "trace-formula identity", 5, [](const DivisorTable& t) { return trace_identity(t); }},
      {3, "asymptotic expansion", 5, [](const DivisorTable& t) { return asymptotic_expansion(t); }},
      {4, "resolvent triple agreement", 10, [](const DivisorTable& t) { return resolvent_triple(t); }},
      {5, "tau triple agreement", 30, [](const DivisorTable& t) { return tau_triple(t); }},
      {6, "determinant three-way", 10, [](const DivisorTable& t) { return determinant(t); }},
      {7, "zero orders", 10, [](const DivisorTable& t) { return zero_orders(t); }},
      {8, "Selberg zeta", 60, [](const DivisorTable& t) { return selberg(t); }},
      {9, "counting reconstruction", 120, [](const DivisorTable& t) { return counting(t); }},
      {10, "Voronoi residuals", 60, [](const DivisorTable& t) { return voronoi(t); }},
      {11, "heat/Mellin", 30, [](const DivisorTable& t) { return heat_mellin(t); }},
      {12, "finite parts", 10, [](const DivisorTable& t) { return finite_parts(t); }},
      {13, "Stirling-like formula", 60, [](const DivisorTable& t) { return stirling(t); }},
      {14, "kappa chain", 10, [](const DivisorTable& t) { return kappa(t); }},
      {15, "log-det asymptotics", 10, [](const DivisorTable& t) { return log_det(t); }},
  };
  return r;
}

}  // namespace selftest

/**
 * \brief Runs the acceptance criteria (all when `ids` is empty).  A criterion
 * passes when every check holds and it finished inside its time limit.
 */
inline std::vector<CriterionResult> run_selftest(const std::vector<int>& ids = {},
                                                 std::size_t table_limit = 1000000) {
  const DivisorTable table(table_limit);
  std::vector<CriterionResult> out;
  for (const auto& e : selftest::registry()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), e.id) == ids.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.time_limit = e.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto c = e.run(table);
      r.pass = c.ok;
      r.detail = c.msg.str();
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds >= r.time_limit) {
      r.pass = false;
      r.detail += "time limit exceeded; ";
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace qgraph
