#pragma once

#include "subideal/error.hpp"
#include "subideal/scalar.hpp"
#include "subideal/term.hpp"
#include "subideal/polynomial.hpp"
#include "subideal/poly_io.hpp"
#include "subideal/point_set.hpp"
#include "subideal/order_ideal.hpp"
#include "subideal/prebasis.hpp"
#include "subideal/division.hpp"
#include "subideal/matrix.hpp"
#include "subideal/exact_engine.hpp"
#include "subideal/approx_engine.hpp"
#include "subideal/allocation.hpp"
