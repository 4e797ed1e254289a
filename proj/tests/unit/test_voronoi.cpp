#include "common.hpp"

#include <qgraph/voronoi.hpp>

using namespace qgraph;

TEST_CASE("left side against independent sums", "[voronoi]") {
  // sum d(n) e^{-tn} is the Lambert series sum 1/(e^{mt} - 1)
  CHECK_THAT(voronoi_lhs(exp_decay(1.0), table()).real(), WithinRel(0.820259511542416823, 1e-13));
  // sum d(n)/(n^2 + 1), mpmath coth-sum oracle
  CHECK_THAT(voronoi_lhs(power_resolvent(1.0, 1.0), table()).real(), WithinRel(2.06279601982792275, 1e-12));
}

TEST_CASE("Weyl integral closed forms", "[voronoi]") {
  for (auto f : {exp_decay(0.5), exp_decay(3.0), power_resolvent(1.0, 2.0), power_resolvent(2.0, 1.0)})
    CHECK_THAT(voronoi_weyl_integral(f).real(), WithinAbs(*voronoi_weyl_closed_form(f), 1e-11));
  CHECK_FALSE(voronoi_weyl_closed_form(power_resolvent(1.5, 1.0)).has_value());
}

TEST_CASE("kernel integrals against closed forms", "[voronoi]") {
  for (std::size_t n : {1u, 3u, 10u}) {
    for (auto f : {exp_decay(0.5), exp_decay(2.0), power_resolvent(1.0, 1.0)}) {
      const double c = *voronoi_kernel_closed_form(f, n);
      CHECK_THAT(voronoi_kernel_integral(f, n).real(), WithinAbs(c, 1e-11 + 1e-9 * std::abs(c)));
    }
  }
}

TEST_CASE("kernel integrals decay like the moment expansion", "[voronoi]") {
  // leading term f'(0) 4/(4 pi^2 n)^2
  const auto f = exp_decay(1.0);
  const double n = 50;
  const double lead = -4.0 / std::pow(4 * M_PI * M_PI * n, 2);
  CHECK_THAT(voronoi_kernel_integral(f, 50).real(), WithinRel(lead, 1e-3));
}

TEST_CASE("summation formula holds", "[voronoi]") {
  for (auto f : {exp_decay(0.2), exp_decay(5.0), power_resolvent(1.0, 2.0), power_resolvent(1.5, 1.0)})
    CHECK(voronoi_residual(f, table()) < 1e-9);
}

TEST_CASE("test function validation", "[voronoi]") {
  CHECK_THROWS_AS(exp_decay(0.0), qgraph::invalid_argument);
  CHECK_THROWS_AS(power_resolvent(0.5, 1.0), qgraph::invalid_argument);
  CHECK_THROWS_AS(voronoi_kernel_integral(exp_decay(1.0), 0), qgraph::invalid_argument);
  TestFunction g;
  CHECK_THROWS_AS(g.validate(), qgraph::invalid_argument);
}
