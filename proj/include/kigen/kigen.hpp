#pragma once

// Umbrella header for the whole library.

#include "kigen/circuit.hpp"
#include "kigen/design.hpp"
#include "kigen/equations.hpp"
#include "kigen/errors.hpp"
#include "kigen/gadgets.hpp"
#include "kigen/generator.hpp"
#include "kigen/json_io.hpp"
#include "kigen/modular.hpp"
#include "kigen/permanent.hpp"
#include "kigen/rational.hpp"
#include "kigen/rng.hpp"
#include "kigen/sparse_poly.hpp"
#include "kigen/unipoly.hpp"
