#pragma once

#include "blowdiag/config.hpp"
#include "blowdiag/criteria.hpp"
#include "blowdiag/diagnostics.hpp"
#include "blowdiag/fft.hpp"
#include "blowdiag/field.hpp"
#include "blowdiag/fitting.hpp"
#include "blowdiag/flow_models.hpp"
#include "blowdiag/grid.hpp"
#include "blowdiag/initial_conditions.hpp"
#include "blowdiag/series_io.hpp"
#include "blowdiag/simulation.hpp"
#include "blowdiag/spectral.hpp"
#include "blowdiag/synth.hpp"
#include "blowdiag/verify.hpp"
