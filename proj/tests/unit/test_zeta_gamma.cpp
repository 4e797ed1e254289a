#include "common.hpp"

#include <qgraph/zeta_gamma.hpp>

using namespace qgraph;

TEST_CASE("shifted zeta reduces to zeta squared", "[zeta_gamma]") {
  const double z2 = M_PI * M_PI / 6;
  CHECK_THAT(zhat(2.0, 0.0, table()).real(), WithinRel(z2 * z2, 1e-13));
  CHECK_THAT(zhat(3.0, 0.0, table()).real(), WithinRel(1.44494079843363423, 1e-13));
  // Z_Delta(s, 0) = zeta(2s)^2
  const double z4 = std::riemann_zeta(4.0);
  CHECK_THAT(zdelta(2.0, 0.0, table()).real(), WithinRel(z4 * z4, 1e-13));
  CHECK_THROWS_AS(zhat(1.0, 0.5, table()), qgraph::domain_error);
}

TEST_CASE("subtracted zeta is the difference", "[zeta_gamma]") {
  for (double s : {1.5, 3.0}) {
    const double zs = std::riemann_zeta(s);
    const cplx k(0.4, 0.1);
    auto a = zhat_tilde(s, k, table()).value;
    auto b = zhat(s, k, table()).value - zs * zs;
    CHECK(std::abs(a - b) < 1e-11);
  }
}

TEST_CASE("shifted zeta brute force", "[zeta_gamma]") {
  // sum over the divisor lattice m l, truncated far out
  const double s = 4.0, k = 0.7;
  double brute = 0;
  for (int m = 1; m <= 3000; ++m)
    for (int l = 1; l * m <= 3000000 && l <= 3000; ++l) brute += std::pow(double(m) * l + k, -s);
  CHECK_THAT(zhat(s, k, table()).real(), WithinRel(brute, 1e-9));
}

TEST_CASE("finite part of zeta squared", "[zeta_gamma]") {
  const auto& c = euler_constants();
  CHECK_THAT(finite_part_zeta_sq_numeric().real(), WithinAbs(finite_part_zeta_sq(), 1e-9));
  CHECK_THAT(finite_part_zeta_sq(), WithinAbs(c.gamma * c.gamma - 2 * c.gamma1, 1e-15));
}

TEST_CASE("finite part of the shifted zeta is minus psi tilde", "[zeta_gamma]") {
  for (double k : {0.25, 0.5, 0.75})
    CHECK_THAT(finite_part_zhat(k, table()).real(), WithinAbs(-psi_tilde(k, table()).real(), 1e-7));
}

TEST_CASE("log gamma tilde against a gamma-product oracle", "[zeta_gamma]") {
  // mpmath -gamma~ k + sum_m (lgamma(1 + k/m) + gamma k/m)
  CHECK_THAT(log_gamma_tilde(0.5, table()).real(), WithinAbs(0.0521009418656351702, 1e-13));
  CHECK_THAT(log_gamma_tilde(3.0, table(), {}, GammaRepr::gamma_product).real(), WithinRel(5.59500483035942125, 1e-12));
  CHECK_THAT(log_gamma_tilde(10.0, table(), {}, GammaRepr::integral).real(), WithinRel(43.4751514277239337, 1e-11));
  CHECK(log_gamma_tilde(0.0, table()).real() == 0.0);
}

TEST_CASE("gamma tilde representations agree off the real axis", "[zeta_gamma]") {
  const cplx k(1.5, 2.0);
  auto a = log_gamma_tilde(k, table(), {}, GammaRepr::weierstrass).value;
  auto b = log_gamma_tilde(k, table(), {}, GammaRepr::gamma_product).value;
  CHECK(std::abs(std::exp(a - b) - 1.0) < 1e-11);
}

TEST_CASE("psi tilde is the log-derivative", "[zeta_gamma]") {
  for (double k : {0.5, 2.0, 7.0}) {
    const double h = 1e-4;
    const double fd = (log_gamma_tilde(k + h, table()).real() - log_gamma_tilde(k - h, table()).real()) / (2 * h);
    CHECK_THAT(psi_tilde(k, table()).real(), WithinAbs(fd, 1e-7));
  }
}

TEST_CASE("psi tilde has residue -d(n) at -n", "[zeta_gamma]") {
  // psi~ = -gamma~ - tau and tau ~ d(n)/(k + n)
  for (double e : {1e-5, 1e-7}) CHECK_THAT((e) * psi_tilde(-6.0 + e, table()).real(), WithinAbs(-4.0, 1e-3));
  CHECK_THROWS_AS(psi_tilde(-6.0, table()), qgraph::domain_error);
}

TEST_CASE("reciprocal gamma tilde vanishes at the poles", "[zeta_gamma]") {
  CHECK(reciprocal_gamma_tilde(-3.0, table()) == 0.0);
  CHECK(std::abs(reciprocal_gamma_tilde(-3.0 + 1e-6, table())) < 1e-4);
  CHECK_THROWS_AS(log_gamma_tilde(-2.0, table()), pole_error);
}

TEST_CASE("Stirling-like exponent has a bounded remainder", "[zeta_gamma]") {
  double lo = 1e9, hi = -1e9;
  for (double k : {30.0, 55.0, 80.0, 100.0}) {
    const double r = log_gamma_tilde(k, table()).real() - gamma_tilde_stirling(k);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(std::max(std::abs(lo), std::abs(hi)) < 2.0);
  CHECK(hi - lo < 0.01);
}
