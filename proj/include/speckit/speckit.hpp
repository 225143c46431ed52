#pragma once

// Umbrella header.

#include "speckit/config.hpp"
#include "speckit/discrete_operator.hpp"
#include "speckit/envelope.hpp"
#include "speckit/errors.hpp"
#include "speckit/spectrum_io.hpp"
#include "speckit/spread_function.hpp"
#include "speckit/tikhonov.hpp"
#include "speckit/training.hpp"
#include "speckit/version.hpp"
#include "speckit/wavelength_grid.hpp"
