#pragma once

#include "pbc/divisor.hpp"
#include "pbc/errors.hpp"
#include "pbc/exceptional.hpp"
#include "pbc/forest.hpp"
#include "pbc/jets.hpp"
#include "pbc/kclass.hpp"
#include "pbc/lattice.hpp"
#include "pbc/pseudo_twist.hpp"
#include "pbc/rigidity.hpp"
#include "pbc/surface.hpp"
