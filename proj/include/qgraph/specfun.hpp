#pragma once

#include "specfun/bernoulli.hpp"
#include "specfun/bessel.hpp"
#include "specfun/constants.hpp"
#include "specfun/expint.hpp"
#include "specfun/gamma.hpp"
#include "specfun/jacobi.hpp"
#include "specfun/zeta.hpp"
