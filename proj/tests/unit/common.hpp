#pragma once

#include <catch_amalgamated.hpp>

#include <qgraph/arithmetic.hpp>

inline const qgraph::DivisorTable& table() {
  static const qgraph::DivisorTable t(1000000);
  return t;
}

using Catch::Approx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
