#pragma once

#include <cstdint>

#include "dvd/instance.hpp"
#include "dvd/treedec.hpp"

namespace dvd {

// Table-size audit of a tree decomposition DP run. `max_rows` is the
// largest table actually allocated, `bound` the structural limit it
// must respect (2^s (tau+1)^s per bag of size s for the threshold DP,
// (2 delta + 1)^s for the radius DP); values saturate instead of
// overflowing.
struct TwStats {
    uint64_t max_rows = 0;
    uint64_t bound = 0;
    bool bound_ok = true;
};

// Minimum set for radius-one instances via dynamic programming over a
// nice form of the given decomposition. Bag states pair a selection
// mask with, per unselected bag vertex, how much of its threshold the
// current subtree must already cover.
Solution vd_tw_solve(const DvdInstance& inst, const TreeDecomposition& td,
                     TwStats* stats = nullptr);

// Minimum set for threshold-one instances. Bag states assign every bag
// vertex a distance-to-selection label within its radius, signed by
// whether the witness neighbor on the next-lower label already lies in
// the processed part.
Solution rd_tw_solve(const DvdInstance& inst, const TreeDecomposition& td,
                     TwStats* stats = nullptr);

}  // namespace dvd
