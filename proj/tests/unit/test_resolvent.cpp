#include "common.hpp"

#include <qgraph/resolvent.hpp>

using namespace qgraph;

TEST_CASE("resolvent trace against a coth-sum oracle", "[resolvent]") {
  // mpmath sum_m (pi (k/m) coth(pi k/m) - 1)/(2k^2)
  CHECK_THAT(resolvent_trace_direct(0.5, table()).real(), WithinRel(2.46501851462297750, 1e-12));
  CHECK_THAT(resolvent_trace_direct(1.0, table()).real(), WithinRel(2.06279601982792275, 1e-12));
  CHECK_THAT(resolvent_trace_po(3.0).real(), WithinRel(1.20746842573248016, 1e-12));
  const double z2 = M_PI * M_PI / 6;
  CHECK_THAT(resolvent_trace_direct(0.0, table()).real(), WithinAbs(z2 * z2, 1e-12));
}

TEST_CASE("resolvent representations agree", "[resolvent]") {
  for (double k : {0.2, 0.6, 0.9}) {
    const auto d = resolvent_trace_direct(k, table()).value;
    CHECK(std::abs(d - resolvent_trace_po(k).value) < 1e-11);
    CHECK(std::abs(d - resolvent_trace_series(k).value) < 1e-11);
  }
  const cplx k(0.4, 0.3);
  CHECK(std::abs(resolvent_trace_direct(k, table()).value - resolvent_trace_po(k).value) < 1e-11);
  CHECK_THROWS(resolvent_trace_series(1.5));
}

TEST_CASE("resolvent large-k form", "[resolvent]") {
  const double k = 200.0;
  const double d = resolvent_trace_direct(k, table()).real();
  CHECK_THAT(resolvent_trace_asymptotic(k), WithinRel(d, 1e-6));
}

TEST_CASE("resolvent poles", "[resolvent]") {
  CHECK_THROWS_AS(resolvent_trace_direct(cplx(0, 2), table()), qgraph::domain_error);
}

TEST_CASE("tau against a digamma-sum oracle", "[resolvent]") {
  // mpmath -sum_m (psi(1 + k/m) + gamma)/m
  CHECK_THAT(tau(0.3, table()).real(), WithinRel(-0.706560497115675337, 1e-12));
  CHECK_THAT(tau(2.5, table(), {}, TauRepr::digamma).real(), WithinRel(-3.50244573102466472, 1e-12));
  CHECK(tau(0.0, table()).real() == 0.0);
}

TEST_CASE("tau representations agree", "[resolvent]") {
  for (double k : {0.1, 0.5, 0.8}) {
    const auto d = tau(k, table(), {}, TauRepr::direct).value;
    CHECK(std::abs(d - tau(k, table(), {}, TauRepr::digamma).value) < 1e-11);
    CHECK(std::abs(d - tau(k, table(), {}, TauRepr::series).value) < 1e-11);
  }
}

TEST_CASE("tau large-k asymptotics", "[resolvent]") {
  const double k = 1000.0;
  const double d = tau(k, table()).real();
  CHECK(std::abs(d - tau_asymptotic(k)) <= 1e-6 * std::abs(d));
  CHECK_THROWS_AS(tau(-2.0, table()), qgraph::domain_error);
}

TEST_CASE("counting recovered from tau", "[resolvent]") {
  auto r = counting_from_tau(10.5, table());
  CHECK_THAT(r.real(), WithinAbs(27.0, 0.05));
}
