#pragma once

#include "squidacc/core.hpp"
#include "squidacc/dc_squid.hpp"
#include "squidacc/error.hpp"
#include "squidacc/gp_deviation.hpp"
#include "squidacc/ode.hpp"
#include "squidacc/phase_engine.hpp"
#include "squidacc/quadrature.hpp"
#include "squidacc/rf_simulation.hpp"
#include "squidacc/rf_squid.hpp"
#include "squidacc/sweep_table.hpp"
