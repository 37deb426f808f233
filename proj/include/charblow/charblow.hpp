#pragma once

#include "charblow/types.hpp"
#include "charblow/model.hpp"
#include "charblow/sampling.hpp"
#include "charblow/spectral.hpp"
#include "charblow/assumptions.hpp"
#include "charblow/coefficients.hpp"
#include "charblow/ode.hpp"
#include "charblow/initial_data.hpp"
#include "charblow/evolve.hpp"
#include "charblow/characteristics.hpp"
#include "charblow/lifespan.hpp"
#include "charblow/config.hpp"
#include "charblow/io.hpp"
#include "charblow/plot.hpp"
#include "charblow/app.hpp"
