#pragma once

#include "jarnik/error.hpp"
#include "jarnik/rational.hpp"
#include "jarnik/polynomial.hpp"
#include "jarnik/field.hpp"
#include "jarnik/matrix.hpp"
#include "jarnik/hnf.hpp"
#include "jarnik/polyhedron.hpp"
#include "jarnik/distance.hpp"
#include "jarnik/subspace.hpp"
#include "jarnik/catalog.hpp"
#include "jarnik/diophantine.hpp"
#include "jarnik/game.hpp"
#include "jarnik/theorem4.hpp"
#include "jarnik/harness.hpp"
