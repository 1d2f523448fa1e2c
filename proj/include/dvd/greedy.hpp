#pragma once

#include "dvd/instance.hpp"

namespace dvd {

// Repeatedly selects the vertex that raises the total covered demand
// the most (its own demand counts as covered once selected), smallest
// id on ties. The result is feasible but not necessarily minimum; its
// size is within a factor ln(n) + 2 of the optimum.
Solution greedy_dvd(const DvdInstance& inst);

}  // namespace dvd
