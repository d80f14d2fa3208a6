#pragma once

#include "costgeom/error.hpp"
#include "costgeom/numeric.hpp"
#include "costgeom/cost_space.hpp"
#include "costgeom/core.hpp"
#include "costgeom/betweenness.hpp"
#include "costgeom/chains.hpp"
#include "costgeom/dress.hpp"
#include "costgeom/pretop.hpp"
#include "costgeom/geometry.hpp"
#include "costgeom/tightspan.hpp"
#include "costgeom/io.hpp"
