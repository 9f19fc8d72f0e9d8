#pragma once

// Umbrella header.

#include "cft/abgroup.hpp"
#include "cft/artin.hpp"
#include "cft/check.hpp"
#include "cft/divisor.hpp"
#include "cft/ecfun.hpp"
#include "cft/error.hpp"
#include "cft/ffield.hpp"
#include "cft/lemma_ext.hpp"
#include "cft/ntheory.hpp"
#include "cft/pairings.hpp"
#include "cft/poly.hpp"
#include "cft/ratfun.hpp"
#include "cft/rayclass.hpp"
#include "cft/sample.hpp"
#include "cft/suites.hpp"
#include "cft/text.hpp"
