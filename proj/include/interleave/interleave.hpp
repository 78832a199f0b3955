#pragma once

#include "interleave/real.hpp"
#include "interleave/decorated.hpp"
#include "interleave/monotone_map.hpp"
#include "interleave/catalog.hpp"
#include "interleave/gf.hpp"
#include "interleave/diagram.hpp"
#include "interleave/module.hpp"
#include "interleave/matching.hpp"
#include "interleave/bipartite.hpp"
#include "interleave/stability.hpp"
#include "interleave/rips.hpp"
#include "interleave/io.hpp"
#include "interleave/svg.hpp"
