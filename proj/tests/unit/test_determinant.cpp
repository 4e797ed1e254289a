#include "common.hpp"

#include <qgraph/determinant_selberg.hpp>

using namespace qgraph;

TEST_CASE("log determinant against a sinh-product oracle", "[determinant]") {
  // mpmath -ln 2pi + sum_m ln(sinh(pi k/m)/(pi k/m))
  CHECK_THAT(log_det_weierstrass(0.7, table()).real(), WithinAbs(-0.622569878361804942, 1e-13));
  CHECK_THAT(log_det_sinh_product(2.1).real(), WithinRel(6.28462135909471865, 1e-13));
  CHECK_THAT(log_det_via_gamma(5.0, table()).real(), WithinRel(28.5115122257236685, 1e-12));
}

TEST_CASE("determinant at zero", "[determinant]") {
  CHECK_THAT(det_weierstrass(0.0, table()).real(), WithinAbs(1 / (2 * M_PI), 1e-15));
  CHECK_THAT(det_sinh_product(0.0).real(), WithinAbs(1 / (2 * M_PI), 1e-15));
  CHECK_THAT(det_via_gamma(0.0, table()).real(), WithinAbs(1 / (2 * M_PI), 1e-15));
}

TEST_CASE("three determinant paths agree in the complex plane", "[determinant]") {
  for (cplx k : {cplx(0.3, 0.0), cplx(1.3, 0.4), cplx(0.2, 2.5)}) {
    auto a = det_weierstrass(k, table()).value;
    CHECK(std::abs(det_sinh_product(k).value - a) <= 1e-10 * std::abs(a));
    CHECK(std::abs(det_via_gamma(k, table()).value - a) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("determinant vanishes on the imaginary integers", "[determinant]") {
  CHECK(det_weierstrass(cplx(0, 3), table()).value == 0.0);
  CHECK(std::abs(det_weierstrass(cplx(1e-6, 3), table()).value) < 1e-10);
}

TEST_CASE("log-derivative is 2kT(k)", "[determinant]") {
  const double k = 1.7, h = 1e-4;
  const double fd =
      (log_det_weierstrass(k + h, table()).real() - log_det_weierstrass(k - h, table()).real()) / (2 * h);
  // mpmath-free: T from the direct divisor sum
  const int M = 200000;
  double T = M_PI * M_PI / (6.0 * M);  // tail, terms ~ pi^2/(6 m^2)
  for (int m = M; m >= 1; --m) T += (M_PI * (k / m) / std::tanh(M_PI * k / m) - 1) / (2 * k * k);
  CHECK_THAT(fd, WithinAbs(2 * k * T, 1e-6));
}

TEST_CASE("small-k series", "[determinant]") {
  for (double k : {0.1, 0.4}) CHECK_THAT(log_det_small_k(k, 40).real(), WithinAbs(log_det_weierstrass(k, table()).real(), 1e-12));
  CHECK_THROWS_AS(log_det_small_k(1.2, 5), qgraph::domain_error);
}

TEST_CASE("sinh factor forms", "[determinant]") {
  for (cplx x : {cplx(0.1, 0.0), cplx(2.0, 1.0)}) {
    CHECK(std::abs(sinh_factor(x) - std::sinh(x) / x) < 1e-14 * std::abs(sinh_factor(x)));
    CHECK(std::abs(std::exp(log_sinh_factor(x)) - sinh_factor(x)) < 1e-14 * std::abs(sinh_factor(x)));
  }
  // e^{kl/2}(1 - e^{-kl})/(kl) = sinh(kl/2)/(kl/2)
  const double l = 2 * M_PI / 3;
  CHECK(std::abs(sinh_factor_euler(1.2, l) - sinh_factor(0.6 * l)) < 1e-14);
}

TEST_CASE("truncated secular function has exact zeros", "[determinant]") {
  CHECK(truncated_secular(6.0, 20) == 0.0);
  CHECK(truncated_secular(13.0, 20) == 0.0);
  CHECK(std::abs(truncated_secular(6.1, 20)) > 1.0);
}

TEST_CASE("regularized secular converges like pi^2 k^2/(6N)", "[determinant]") {
  for (double k : {0.5, 1.0, 2.0}) {
    const double d = log_det_weierstrass(k, table()).real();
    double prev = INFINITY;
    for (std::size_t N : {100u, 500u, 1000u, 4000u}) {
      const double gap = log_regularized_secular(k, N) - d;
      CHECK_THAT(gap, WithinRel(-M_PI * M_PI * k * k / (6.0 * N), 0.01));
      CHECK(std::abs(gap) < prev);
      prev = std::abs(gap);
    }
  }
}

TEST_CASE("large-k asymptotics of the log determinant", "[determinant]") {
  CHECK_THAT(log_det_weierstrass(50.0, table()).real(), WithinAbs(log_det_weyl(50.0), 1e-8));
  double with = 0, without = 0;
  for (double s : {2.0, 3.0, 4.0, 5.0}) {
    const double l = log_det_weierstrass(s, table()).real();
    with += std::abs(l - log_det_asymptotic(s));
    without += std::abs(l - log_det_weyl(s));
  }
  CHECK(with < 0.1 * without);
}
