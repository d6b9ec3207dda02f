#pragma once

// Everything in one include.

#include "ppcalc/abelian.hpp"
#include "ppcalc/classify.hpp"
#include "ppcalc/corpus.hpp"
#include "ppcalc/enumerate.hpp"
#include "ppcalc/error.hpp"
#include "ppcalc/formula.hpp"
#include "ppcalc/integer.hpp"
#include "ppcalc/io.hpp"
#include "ppcalc/matrix.hpp"
#include "ppcalc/module.hpp"
#include "ppcalc/order.hpp"
#include "ppcalc/parser.hpp"
#include "ppcalc/regions.hpp"
#include "ppcalc/ring.hpp"
#include "ppcalc/semantics.hpp"
#include "ppcalc/ulm.hpp"
#include "ppcalc/zlattice.hpp"
