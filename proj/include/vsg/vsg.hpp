#pragma once

#include "error.hpp"
#include "groups.hpp"
#include "invariants.hpp"
#include "numtheory.hpp"
#include "qpoly.hpp"
#include "splitting.hpp"
#include "valuation.hpp"
