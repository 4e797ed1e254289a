#pragma once

#include "qgraph/arithmetic.hpp"
#include "qgraph/core.hpp"
#include "qgraph/determinant_selberg.hpp"
#include "qgraph/kappa_chain.hpp"
#include "qgraph/quadrature.hpp"
#include "qgraph/resolvent.hpp"
#include "qgraph/selftest.hpp"
#include "qgraph/specfun.hpp"
#include "qgraph/voronoi.hpp"
#include "qgraph/wave_trace.hpp"
#include "qgraph/zeta_gamma.hpp"
