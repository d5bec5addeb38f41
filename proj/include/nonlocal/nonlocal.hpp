#pragma once

// Umbrella header: the whole library in one include.

#include "nonlocal/bloch.hpp"
#include "nonlocal/cumulants.hpp"
#include "nonlocal/hv_models.hpp"
#include "nonlocal/matrix.hpp"
#include "nonlocal/optimize.hpp"
#include "nonlocal/qubit_scenario.hpp"
#include "nonlocal/sampling.hpp"
#include "nonlocal/scan.hpp"
#include "nonlocal/spectrum.hpp"
#include "nonlocal/uncertainty.hpp"
#include "nonlocal/verify.hpp"
