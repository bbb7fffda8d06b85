#pragma once

#include "conicdiv/cone.hpp"
#include "conicdiv/conic_cells.hpp"
#include "conicdiv/divisor_theory.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/exact_linalg.hpp"
#include "conicdiv/io.hpp"
#include "conicdiv/multiplicity_hk.hpp"
#include "conicdiv/polyhedra.hpp"
#include "conicdiv/presets.hpp"
#include "conicdiv/segre_depth.hpp"
#include "conicdiv/svg.hpp"
