#pragma once

#include "dessin/error.hpp"
#include "dessin/perm.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/poly.hpp"
#include "dessin/shabat.hpp"
#include "dessin/monodromy.hpp"
#include "dessin/shabat_solver.hpp"
#include "dessin/rh_ode.hpp"
#include "dessin/io.hpp"
