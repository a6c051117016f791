#pragma once

#include "potentia/types.hpp"
#include "potentia/kernel.hpp"
#include "potentia/energy.hpp"
#include "potentia/nnls.hpp"
#include "potentia/projection.hpp"
#include "potentia/equilibrium.hpp"
#include "potentia/balayage.hpp"
#include "potentia/grids.hpp"
#include "potentia/json_io.hpp"
#include "potentia/scenario.hpp"
