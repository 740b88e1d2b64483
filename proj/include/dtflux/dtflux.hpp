#pragma once

#include "dtflux/cone.hpp"
#include "dtflux/dynamics.hpp"
#include "dtflux/egraph.hpp"
#include "dtflux/exactlin.hpp"
#include "dtflux/fluxcone.hpp"
#include "dtflux/locus.hpp"
#include "dtflux/rational.hpp"
#include "dtflux/realization.hpp"
#include "dtflux/simplex.hpp"
