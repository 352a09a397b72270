// Umbrella header.
#pragma once

#include "lattice.hpp"
#include "character.hpp"
#include "charspace.hpp"
#include "cohomology.hpp"
#include "linear.hpp"
#include "localized.hpp"
#include "numeric.hpp"
#include "polynomial.hpp"
#include "setup.hpp"
#include "sigma.hpp"
#include "stabilizer.hpp"
#include "tree.hpp"
#include "valuation.hpp"
