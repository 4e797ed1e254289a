#include "common.hpp"

#include <qgraph/kappa_chain.hpp>

using namespace qgraph;

namespace {
double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t j = 1; j <= n; ++j) h += 1.0 / double(j);
  return h;
}
}  // namespace

TEST_CASE("uncoupled chain: Dirichlet root at 1/H_N", "[kappa_chain]") {
  ChainSpec s{0.0, 20, 0.1, 0.4, 2000};
  auto sp = spectrum(s);
  REQUIRE(sp.roots.size() == 1);
  CHECK_THAT(sp.roots[0].k, WithinAbs(1 / harmonic(20), 1e-10));
}

TEST_CASE("uncoupled chain: Neumann roots at (m + 1/2)/H_N", "[kappa_chain]") {
  ChainSpec s{0.0, 20, 0.05, 0.8, 2000, Closure::neumann};
  auto sp = spectrum(s);
  const double h = harmonic(20);
  REQUIRE(sp.roots.size() == 3);
  for (int m = 0; m < 3; ++m) CHECK_THAT(sp.roots[m].k, WithinAbs((m + 0.5) / h, 1e-10));
}

TEST_CASE("strong coupling pushes the root to 1", "[kappa_chain]") {
  double prev = 1.0;
  for (double kappa : {1e2, 1e3, 1e4, 1e6}) {
    ChainSpec s{kappa, 40, 0.5, 1.5, 2000};
    auto sp = spectrum(s);
    REQUIRE(sp.roots.size() == 1);
    const double d = 1.0 - sp.roots[0].k;
    CHECK(d > 0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("strong coupling: multiplicities near 2 and 3", "[kappa_chain]") {
  ChainSpec s{1e4, 40, 1.5, 3.5, 2000};
  auto sp = spectrum(s);
  REQUIRE(sp.roots.size() == 4);
  CHECK(std::abs(sp.roots[0].k - 2) < 1e-3);
  CHECK(std::abs(sp.roots[1].k - 2) < 1e-3);
  CHECK(std::abs(sp.roots[2].k - 3) < 1e-3);
  CHECK(std::abs(sp.roots[3].k - 3) < 1e-3);
  CHECK_FALSE(sp.unresolved);
}

TEST_CASE("transfer recursion", "[kappa_chain]") {
  // kappa = 0, n = 1, k = 1/2: [cot(pi/2) + cot(pi/4)] sin(pi/4)
  CHECK_THAT(transfer_coefficients(1, 0.5, 0.0).A, WithinAbs(std::sqrt(0.5), 1e-15));
  const double k = 0.77, kappa = 3.0;
  auto a = recursion_solve(k, kappa, 12);
  // one explicit step
  auto c = transfer_coefficients(1, k, kappa);
  CHECK_THAT(a[2], WithinRel(c.A, 1e-15));
  auto t = recursion_scaled(k, kappa, 12);
  CHECK_THAT(t.last / t.prev, WithinRel(a[12] / a[11], 1e-12));
  CHECK_THAT(t.last * std::exp(t.log_scale), WithinRel(a[12], 1e-12));
}

TEST_CASE("resonances and bad specs are rejected", "[kappa_chain]") {
  CHECK_THROWS_AS(transfer_coefficients(2, 2.0, 1.0), resonance_error);
  CHECK_THROWS_AS(transfer_coefficients(0, 0.5, 1.0), qgraph::invalid_argument);
  CHECK_THROWS_AS(spectrum(ChainSpec{-1.0}), qgraph::invalid_argument);
  CHECK_THROWS_AS(spectrum(ChainSpec{1.0, 1}), qgraph::invalid_argument);
  CHECK_THROWS_AS(spectrum(ChainSpec{1.0, 10, 2.0, 1.0}), qgraph::invalid_argument);
  // grid points on the resonance set are nudged, not fatal
  CHECK(std::isfinite(secular_value(1.0, ChainSpec{5.0, 10})));
}
