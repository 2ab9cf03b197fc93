#pragma once

#include "harmap/errors.hpp"
#include "harmap/gaussian_rational.hpp"
#include "harmap/scalar.hpp"
#include "harmap/polynomial.hpp"
#include "harmap/bipoly.hpp"
#include "harmap/exact_linalg.hpp"
#include "harmap/random.hpp"
#include "harmap/numeric.hpp"
#include "harmap/parallel.hpp"
#include "harmap/holomap.hpp"
#include "harmap/gauss_transform.hpp"
#include "harmap/quadrature.hpp"
#include "harmap/strata.hpp"
#include "harmap/paths.hpp"
#include "harmap/json.hpp"
