#include "common.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <qgraph/specfun.hpp>

using namespace qgraph;

TEST_CASE("real Bessel functions against the standard library", "[specfun]") {
  for (double x : {0.01, 0.5, 2.0, 7.5, 15.9, 16.1, 40.0, 250.0}) {
    CHECK_THAT(bessel_j0(x), WithinAbs(std::cyl_bessel_j(0.0, x), 1e-14));
    CHECK_THAT(bessel_j1(x), WithinAbs(std::cyl_bessel_j(1.0, x), 1e-14));
    CHECK_THAT(bessel_y0(x), WithinAbs(std::cyl_neumann(0.0, x), 1e-14));
    CHECK_THAT(bessel_y1(x), WithinAbs(std::cyl_neumann(1.0, x), 1e-14));
    CHECK_THAT(bessel_k0(x), WithinRel(std::cyl_bessel_k(0.0, x), 1e-12));
    CHECK_THAT(bessel_k1(x), WithinRel(std::cyl_bessel_k(1.0, x), 1e-12));
  }
}

TEST_CASE("complex K0 and K1", "[specfun]") {
  // mpmath
  auto k0 = bessel_k0(cplx(1, 1));
  CHECK_THAT(k0.real(), WithinAbs(0.0801977269465178187, 1e-14));
  CHECK_THAT(k0.imag(), WithinAbs(-0.357277459285330251, 1e-14));
  auto k1 = bessel_k1(cplx(3, -2));
  CHECK_THAT(k1.real(), WithinAbs(-0.0248095200701515288, 1e-15));
  CHECK_THAT(k1.imag(), WithinAbs(0.0255707490563517981, 1e-15));
  // conjugate symmetry
  auto a = bessel_k1(cplx(20, 30)), b = bessel_k1(cplx(20, -30));
  CHECK(std::abs(a - std::conj(b)) <= 1e-15 * std::abs(a));
}

TEST_CASE("Kelvin functions", "[specfun]") {
  CHECK_THAT(kelvin(KelvinKind::ker, 2.0), WithinAbs(-0.0416645139915095323, 1e-14));
  CHECK_THAT(kelvin(KelvinKind::kei, 2.0), WithinAbs(-0.202400067764704288, 1e-14));
  CHECK_THAT(kelvin(KelvinKind::ker, 10.0), WithinRel(0.000129466330214806122, 1e-10));
}

TEST_CASE("exponential integrals against the standard library", "[specfun]") {
  for (double x : {0.1, 1.0, 5.0, 30.0, 60.0}) {
    CHECK_THAT(expint_ei(x), WithinRel(std::expint(x), 1e-13));
    CHECK_THAT(expint_e1(x), WithinRel(-std::expint(-x), 1e-13));
    const double pb = std::exp(x) * -std::expint(-x) - std::exp(-x) * std::expint(x);
    CHECK_THAT(po_bracket(x), WithinAbs(pb, 1e-12 * std::abs(pb) + 1e-16));
  }
}

TEST_CASE("gamma and digamma", "[specfun]") {
  auto l = lgamma_c(cplx(1, 2));
  CHECK_THAT(l.real(), WithinAbs(-1.87607878643092934, 1e-14));
  CHECK_THAT(l.imag(), WithinAbs(0.129646316309788311, 1e-14));
  auto p = digamma(cplx(0.3, 1));
  CHECK_THAT(p.real(), WithinAbs(-0.0308905457331478453, 1e-14));
  CHECK_THAT(p.imag(), WithinAbs(1.78828581192518112, 1e-14));
  for (double x : {0.1, 1.0, 3.7, 55.0}) {
    CHECK_THAT(digamma(x), WithinAbs(boost::math::digamma(x), 1e-13));
    CHECK_THAT(lgamma_c(cplx(x, 0)).real(), WithinAbs(std::lgamma(x), 1e-13));
  }
  CHECK_THROWS_AS(lgamma_c(cplx(-2, 0)), pole_error);
}

TEST_CASE("zeta functions", "[specfun]") {
  for (double s : {1.5, 2.0, 3.0, 10.0}) CHECK_THAT(riemann_zeta(s), WithinRel(std::riemann_zeta(s), 1e-14));
  CHECK_THAT(hurwitz_zeta(2.5, 0.3), WithinRel(21.069239202247723, 1e-13));
  CHECK_THAT(hurwitz_zeta(2.0, 1.0), WithinRel(M_PI * M_PI / 6, 1e-14));
}

TEST_CASE("Jacobi omega satisfies the theta duality", "[specfun]") {
  for (double x : {0.05, 0.3, 1.0, 2.5}) {
    const double lhs = 1 + 2 * jacobi_omega(1 / x);
    const double rhs = std::sqrt(x) * (1 + 2 * jacobi_omega(x));
    CHECK_THAT(lhs, WithinRel(rhs, 1e-14));
  }
}

TEST_CASE("Bernoulli numbers", "[specfun]") {
  CHECK(bernoulli(0) == 1.0);
  CHECK(bernoulli(2) == Approx(1.0 / 6));
  CHECK(bernoulli(4) == Approx(-1.0 / 30));
  CHECK(bernoulli(12) == Approx(-691.0 / 2730));
  CHECK(bernoulli(7) == 0.0);
}

TEST_CASE("Euler and Stieltjes constants", "[specfun]") {
  const auto& c = euler_constants();
  CHECK_THAT(c.gamma, WithinAbs(0.57721566490153286, 1e-16));
  CHECK_THAT(c.gamma1, WithinAbs(-0.0728158454836767249, 1e-13));
  CHECK_THAT(c.gamma_tilde, WithinAbs(0.478809614775072124, 1e-13));
  CHECK_THAT(c.D_const, WithinAbs(-2.12374368162329856, 1e-13));
}

TEST_CASE("K1 on the imaginary axis matches J1 and Y1", "[specfun]") {
  for (double x = 0.5; x <= 20.0; x += 0.75) {
    const cplx k = bessel_k1(cplx(0.0, x));
    const cplx ref = -0.5 * M_PI * cplx(bessel_j1(x), -bessel_y1(x));
    CHECK(std::abs(k - ref) < 1e-10);
  }
  CHECK(std::abs(bessel_j1(3.8317059702075123)) < 1e-15);
}

TEST_CASE("exponential integral values and the large-x bracket", "[specfun]") {
  CHECK_THAT(expint_e1(1.0), WithinAbs(0.219383934395520274, 1e-15));
  CHECK_THAT(expint_ei(1.0), WithinAbs(1.89511781635593676, 1e-14));
  const double x = 50.0;
  const double lead = -2 / (x * x) - 12 / std::pow(x, 4);
  CHECK(std::abs(po_bracket(x) - lead) < 1e-4 * std::abs(lead));
  CHECK(exp_integral(ExpIntKind::E1, 2.0) == expint_e1(2.0));
}

TEST_CASE("zeta near its pole", "[specfun]") {
  const double g1 = euler_constants().gamma1;
  double prev = 0;
  for (double h : {1e-2, 1e-3}) {
    const double r = riemann_zeta(1.0 + h) - 1.0 / h - euler_gamma + g1 * h;
    if (prev != 0) CHECK(std::abs(r) < 0.02 * std::abs(prev));  // O(h^2)
    prev = r;
  }
}
