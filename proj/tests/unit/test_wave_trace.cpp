#include "common.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <qgraph/wave_trace.hpp>

using namespace qgraph;

TEST_CASE("wave trace against a Lambert-series oracle", "[wave_trace]") {
  // mpmath sum 1/(e^{mt} - 1)
  CHECK_THAT(theta_direct(1.0, table()).real(), WithinRel(0.820259511542416823, 1e-13));
  CHECK_THAT(theta_direct(0.1, table()).real(), WithinRel(29.0473131229359543, 1e-13));
  for (double t : {0.05, 0.7, 3.0}) CHECK_THAT(theta_lambert(t), WithinRel(theta_direct(t, table()).real(), 1e-13));
}

TEST_CASE("Weyl plus periodic orbits reproduce the trace", "[wave_trace]") {
  for (double t : {0.05, 0.5, 2.0, 5.0}) {
    const double th = theta_direct(t, table()).real();
    CHECK(std::abs(theta_weyl(t) + theta_po(t, table()).real() - th) <= 1e-10 * std::max(1.0, th));
  }
  // quadrature form of the orbit sum
  for (double t : {0.2, 1.0}) CHECK_THAT(theta_po_integral(t, table()).real(), WithinAbs(theta_po(t, table()).real(), 1e-10));
}

TEST_CASE("small-t expansion has error of the next order", "[wave_trace]") {
  for (double t : {1e-2, 1e-3}) {
    const double th = theta_direct(t, table()).real();
    CHECK(std::abs(theta_asymptotic(t, 3) - th) / th <= 10 * std::pow(t, 4));
  }
  CHECK_THROWS_AS(theta_asymptotic(0.5, 31), qgraph::invalid_argument);
  CHECK_THROWS_AS(theta_asymptotic(1.5, 3), qgraph::invalid_argument);
}

TEST_CASE("expansion at fixed t diverges past its optimal order", "[wave_trace]") {
  using R = boost::multiprecision::cpp_bin_float_50;
  const R t = R(1) / 2;
  const R th = theta_direct_as<R>(t, table(), R("1e-52"));
  const double e20 = static_cast<double>(abs(theta_asymptotic<R>(t, 20) - th));
  const double e80 = static_cast<double>(abs(theta_asymptotic<R>(t, 80) - th));
  const double e140 = static_cast<double>(abs(theta_asymptotic<R>(t, 140) - th));
  CHECK(e80 < e20);
  CHECK(e140 > e80);
}

TEST_CASE("shifted trace", "[wave_trace]") {
  const cplx k(0.3, 0.2);
  for (double t : {0.05, 0.5}) {
    auto a = theta_generalized(t, k, table()).value;
    auto b = theta_generalized_factorized(t, k, table()).value;
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  }
  const double t = 1e-3;
  auto a = theta_generalized(t, k, table()).value;
  CHECK(std::abs(theta_generalized_asymptotic(t, k, 3) - a) <= 1e-9 * std::abs(a));
}

TEST_CASE("heat trace against a Jacobi theta oracle", "[wave_trace]") {
  // mpmath sum_m (theta3(0, e^{-m^2 t}) - 1)/2
  CHECK_THAT(heat_trace(0.01, 0.0, table()).real(), WithinRel(22.1864330888686855, 1e-12));
  CHECK_THAT(heat_trace(0.1, 0.0, table()).real(), WithinRel(3.96041745086767735, 1e-12));
  CHECK_THAT(heat_trace_omega(1.0, 0.0).real(), WithinRel(0.404757876190385015, 1e-13));
  // k enters as e^{-k^2 t}
  CHECK_THAT(heat_trace(0.1, 2.0, table()).real(), WithinRel(std::exp(-0.4) * 3.96041745086767735, 1e-12));
}

TEST_CASE("heat small-t form carries the constant", "[wave_trace]") {
  const double t = 1e-4;
  const double lead = std::sqrt(M_PI / t) * (heat_constant() - 0.25 * std::log(t / M_PI)) + 0.25;
  CHECK_THAT(heat_trace(t, 0.0, table()).real(), WithinRel(lead, 1e-10));
  CHECK_THAT(heat_asymptotic(t, 0.0, 2).real(), WithinRel(heat_trace(t, 0.0, table()).real(), 1e-10));
}

TEST_CASE("Mellin transform of the trace", "[wave_trace]") {
  for (double z : {2.0, 2.5, 4.0}) {
    const double zz = std::riemann_zeta(z);
    CHECK_THAT(mellin_check(z, table()).real(), WithinRel(zz * zz, 1e-10));
  }
}

TEST_CASE("wave trace domain errors", "[wave_trace]") {
  CHECK_THROWS_AS(theta_direct(0.0, table()), qgraph::invalid_argument);
  CHECK_THROWS_AS(theta_po(-1.0, table()), qgraph::invalid_argument);
}
