#pragma once
// Umbrella header for the exact colored-Jones toolkit for Mazur doubles.

#include "mcj/errors.hpp"
#include "mcj/laurent.hpp"
#include "mcj/symbols.hpp"
#include "mcj/degrees.hpp"
#include "mcj/knotdata.hpp"
#include "mcj/bracket.hpp"
#include "mcj/mazur.hpp"
#include "mcj/surfaces.hpp"
#include "mcj/crossing.hpp"
