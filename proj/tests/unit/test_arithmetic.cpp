#include "common.hpp"

#include <random>

using namespace qgraph;

TEST_CASE("sieve agrees with trial division", "[arithmetic]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(1, table().limit());
  for (int i = 0; i < 2000; ++i) {
    const auto n = pick(rng);
    REQUIRE(table().d(n) == divisor_count_trial(n));
  }
  CHECK(table().d(1) == 1);
  CHECK(table().d(720720) == 240);
  CHECK(table().d(999983) == 2);  // prime
}

TEST_CASE("trial division small cases", "[arithmetic]") {
  const std::uint32_t d[] = {1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6};
  for (int n = 1; n <= 12; ++n) CHECK(divisor_count_trial(n) == d[n - 1]);
  CHECK(divisor_count_trial(1ULL << 40) == 41);
}

TEST_CASE("counting function against the hyperbola count", "[arithmetic]") {
  CHECK(counting_function(10, table()) == 27);
  CHECK(counting_function(100, table()) == 482);
  CHECK(counting_function(0.5, table()) == 0);
  CHECK(counting_function(6.999, table()) == 14);
  for (double x : {17.5, 1234.0, 99999.9}) {
    const auto m = std::uint64_t(x);
    std::uint64_t brute = 0;
    for (std::uint64_t j = 1; j <= m; ++j) brute += m / j;
    CHECK(counting_function(x, table()) == brute);
  }
}

TEST_CASE("divisor_at vanishes off the integers", "[arithmetic]") {
  CHECK(divisor_at(6.0, table()) == 4.0);
  CHECK(divisor_at(6.5, table()) == 0.0);
}

TEST_CASE("Weyl term tracks the counting function", "[arithmetic]") {
  // |N - N^W| = O(x^{1/3+}) is far below x here
  const double x = 1e6;
  const double r = std::abs(double(counting_function(x, table())) - weyl_counting_term(x));
  CHECK(r < 100 * std::cbrt(x));
  CHECK(mean_multiplicity(x, table()) == Approx(double(counting_function(x, table())) / x));
}

TEST_CASE("divisor tails match the zeta square minus partial sums", "[arithmetic]") {
  // T_2(N) = zeta(2)^2 - sum_{n<=N} d(n)/n^2
  const double z2 = M_PI * M_PI / 6;
  for (std::size_t N : {10u, 1000u, 20000u}) {
    double s = 0;
    for (std::size_t n = 1; n <= N; ++n) s += double(table()[n]) / (double(n) * n);
    CHECK_THAT(table().tail(2, N), WithinRel(z2 * z2 - s, 1e-9));
  }
}

TEST_CASE("table rejects bad indices", "[arithmetic]") {
  CHECK_THROWS_AS(table().d(0), qgraph::out_of_range);
  CHECK_THROWS_AS(table().d(table().limit() + 1), qgraph::out_of_range);
  CHECK_THROWS_AS(DivisorTable(0), qgraph::invalid_argument);
}
