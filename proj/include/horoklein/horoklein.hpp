#pragma once

// Computable horofunction boundary of the infinite dimensional real
// hyperbolic space, in the Klein disc model over a sequence space.

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/experiment.hpp"
#include "horoklein/gauge.hpp"
#include "horoklein/horofunction.hpp"
#include "horoklein/json_io.hpp"
#include "horoklein/metrics.hpp"
#include "horoklein/rng.hpp"
#include "horoklein/sequences.hpp"
#include "horoklein/sparse_vector.hpp"
#include "horoklein/tolerances.hpp"
