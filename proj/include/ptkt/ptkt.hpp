// ptkt.hpp — umbrella header.

#pragma once

#include "ptkt/core_types.hpp"
#include "ptkt/classical_map.hpp"
#include "ptkt/floquet.hpp"
#include "ptkt/spectral.hpp"
#include "ptkt/phase_space.hpp"
#include "ptkt/level_stats.hpp"
#include "ptkt/io.hpp"
