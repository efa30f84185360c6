#pragma once

#include "lackwalk/coin.hpp"
#include "lackwalk/experiments.hpp"
#include "lackwalk/fit.hpp"
#include "lackwalk/harness.hpp"
#include "lackwalk/lattice.hpp"
#include "lackwalk/reference.hpp"
#include "lackwalk/search.hpp"
#include "lackwalk/table.hpp"
#include "lackwalk/walk.hpp"
