#pragma once

#include "confspace/chain_complex.hpp"
#include "confspace/closed_forms.hpp"
#include "confspace/configuration_space.hpp"
#include "confspace/cycles.hpp"
#include "confspace/graph.hpp"
#include "confspace/graph_library.hpp"
#include "confspace/homology.hpp"
#include "confspace/reduction.hpp"
#include "confspace/smith.hpp"
