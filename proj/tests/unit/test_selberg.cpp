#include "common.hpp"

#include <qgraph/determinant_selberg.hpp>

using namespace qgraph;

TEST_CASE("Selberg zeta against the determinant oracle", "[selberg]") {
  // mpmath: -ln s/2 - pi s ln s - (2 gamma - 1) pi s + ln D(s^2)
  CHECK_THAT(log_selberg_z_series(1.0, table()).real(), WithinAbs(1.55904864141073734e-4, 1e-12));
  CHECK_THAT(log_selberg_z_series(2.0, table()).real(), WithinAbs(-2.23714447816652765e-6, 1e-12));
  CHECK_THAT(log_selberg_z_determinant(1.0, table()).real(), WithinAbs(1.55904864141073734e-4, 1e-12));
}

TEST_CASE("series and determinant paths agree off the axis", "[selberg]") {
  for (cplx s : {cplx(0.5, 0.0), cplx(1.0, 1.0), cplx(3.0, -2.0)}) {
    auto a = std::exp(log_selberg_z_series(s, table()).value);
    auto b = std::exp(log_selberg_z_determinant(s, table()).value);
    CHECK(std::abs(a - b) < 1e-9);
  }
  CHECK_THAT(selberg_z(10.0, table()).real(), WithinAbs(1.0, 1e-6));
}

TEST_CASE("functional equation and Hardy realness", "[selberg]") {
  for (double k : {0.5, 2.25, 4.5}) {
    CHECK(functional_equation_residual(k, table()) < 1e-6);
    CHECK(hardy_z(k, table()).imag_diagnostic < 1e-6);
  }
  CHECK_THROWS_AS(functional_equation_residual(2.0, table()), qgraph::invalid_argument);
}

TEST_CASE("Hardy function changes sign at odd-order zeros only", "[selberg]") {
  auto sgn = [](double k) { return hardy_z(k, table()).value > 0; };
  CHECK(sgn(0.9) != sgn(1.1));  // d(1) = 1
  CHECK(sgn(1.9) == sgn(2.1));  // d(2) = 2
  CHECK(sgn(3.9) != sgn(4.1));  // d(4) = 3
}

TEST_CASE("critical line point carries the Weyl phase", "[selberg]") {
  auto p = critical_line_point(1.5, table());
  CHECK_THAT(p.weyl_phase, WithinAbs(M_PI * weyl_counting_term(1.5), 1e-14));
  CHECK_THAT(std::abs(p.z_value), WithinRel(std::abs(p.hardy_value), 1e-6));
  CHECK_THROWS_AS(log_selberg_z_series(cplx(0, 3), table()), pole_error);
}

TEST_CASE("counting function from Z and from D", "[selberg]") {
  CHECK_THAT(counting_reconstruction(3.5, table()).real(), WithinAbs(5.0, 0.01));
  CHECK_THAT(counting_reconstruction_determinant(6.0, table()).real(), WithinAbs(12.0, 1e-6));
  CHECK_THAT(counting_reconstruction_determinant(4.5, table()).real(), WithinAbs(8.0, 1e-6));
}

TEST_CASE("oscillatory counting term from the Bessel series", "[selberg]") {
  for (double x : {3.5, 7.25}) {
    const double exact = double(counting_function(x, table())) - weyl_counting_term(x);
    CHECK_THAT(n_osc_bessel(x, table()).real(), WithinAbs(exact, 1e-6));
  }
}
