#pragma once

// Umbrella header for the exact p-adic approximation-set toolkit.

#include "padic/approx_sets.hpp"
#include "padic/arith.hpp"
#include "padic/ball.hpp"
#include "padic/errors.hpp"
#include "padic/intervals.hpp"
#include "padic/psi.hpp"
#include "padic/rational.hpp"
#include "padic/sampling.hpp"
