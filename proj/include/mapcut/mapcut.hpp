#pragma once

#include "mapcut/bitplane.hpp"
#include "mapcut/errors.hpp"
#include "mapcut/image.hpp"
#include "mapcut/ising.hpp"
#include "mapcut/maxflow.hpp"
#include "mapcut/netpbm.hpp"
#include "mapcut/network.hpp"
#include "mapcut/noise.hpp"
#include "mapcut/restore.hpp"
