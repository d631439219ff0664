#pragma once

#include "hyperapprox/errors.hpp"
#include "hyperapprox/region.hpp"
#include "hyperapprox/orthopoly.hpp"
#include "hyperapprox/quadrature.hpp"
#include "hyperapprox/special_functions.hpp"
#include "hyperapprox/adaptive.hpp"
#include "hyperapprox/kernel.hpp"
#include "hyperapprox/moments.hpp"
#include "hyperapprox/connection.hpp"
#include "hyperapprox/hyperinterp.hpp"
#include "hyperapprox/reference.hpp"
#include "hyperapprox/analysis/experiments.hpp"
#include "hyperapprox/analysis/invariants.hpp"
#include "hyperapprox/analysis/csv.hpp"
#include "hyperapprox/analysis/svg.hpp"
#include "hyperapprox/analysis/selftest.hpp"
