#pragma once

#include "pickzeta/errors.hpp"
#include "pickzeta/dirichlet_arith.hpp"
#include "pickzeta/kernels.hpp"
#include "pickzeta/pick_core.hpp"
#include "pickzeta/disc_solver.hpp"
#include "pickzeta/realization.hpp"
#include "pickzeta/json_io.hpp"
#include "pickzeta/cli_io.hpp"
