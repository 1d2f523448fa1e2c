#pragma once

#include <vector>

#include "dvd/instance.hpp"
#include "dvd/modular.hpp"

namespace dvd {

struct MwOptions {
    int width_cap = 20;    // largest Subst fanout the solvers accept
    bool memo = false;     // cache failed decision states
    bool parallel = true;  // parallel module-set scan where available
};

// Checks whether selecting one representative per module in `selection`
// (indices into tv.modules, sorted) can satisfy a threshold-one
// instance, and picks canonical representatives when it can. A module
// without its own selection needs another selected module within the
// smallest radius present in it; a selected module needs a common
// in-module neighbor of its radius-one vertices unless an adjacent
// module is selected too. Representatives are appended to *out when
// non-null.
bool rd_check(const DvdInstance& inst, const TopView& tv, const std::vector<int>& selection,
              std::vector<int>* out);

// Minimum set for threshold-one instances of a connected graph:
// scans module subsets by size, lexicographically within a size.
Solution rd_mw_solve(const DvdInstance& inst, const MwOptions& opts = {});

// Decision: is there a set of exactly `budget` vertices meeting all
// thresholds of a radius-one instance? Walks the parse tree, splitting
// the budget among children and discounting thresholds by selections
// made in adjacent sibling subtrees. Witness appended to *out on
// success.
bool vd_mw_decide(const DvdInstance& inst, const ParseTree& pt, int budget,
                  const MwOptions& opts = {}, std::vector<int>* out = nullptr);

// Minimum set for radius-one instances: smallest budget accepted by
// vd_mw_decide.
Solution vd_mw_solve(const DvdInstance& inst, const MwOptions& opts = {});

// Minimum set for arbitrary thresholds and radii on a connected graph.
// Splits the budget among the root modules; vertices with radius >= 2
// see whole modules at quotient distance, so only their counts matter,
// and any vertex whose demand stays unmet by counts alone is forced
// into the set. Radius-one vertices delegate to the vd machinery.
Solution dvd_mw_solve(const DvdInstance& inst, const MwOptions& opts = {});

}  // namespace dvd
