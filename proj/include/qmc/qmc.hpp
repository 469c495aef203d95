#pragma once

// Umbrella header: exact arithmetic over finite alphabets, homogeneous
// weights, codes in quotient modules with their size bounds, and coherent
// network error-correction analysis.

#include "qmc/asymptotics.hpp"
#include "qmc/bounds.hpp"
#include "qmc/codes.hpp"
#include "qmc/errors.hpp"
#include "qmc/io.hpp"
#include "qmc/matrix.hpp"
#include "qmc/network.hpp"
#include "qmc/rational.hpp"
#include "qmc/ring.hpp"
#include "qmc/rng.hpp"
#include "qmc/search.hpp"
#include "qmc/simulator.hpp"
#include "qmc/submodule.hpp"
#include "qmc/vec.hpp"
#include "qmc/weights.hpp"
