#pragma once

// Umbrella header for the production library.  The brute-force reference
// implementations live under apery/testing/ and are deliberately not
// included here.

#include "apery/apery_set.hpp"
#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/invariants.hpp"
#include "apery/min_length.hpp"
#include "apery/monoid.hpp"
#include "apery/quasipoly.hpp"
#include "apery/rational.hpp"
#include "apery/shifted.hpp"
#include "apery/timing.hpp"
