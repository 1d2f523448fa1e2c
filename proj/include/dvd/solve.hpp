#pragma once

#include <optional>
#include <string>

#include "dvd/instance.hpp"
#include "dvd/treedec.hpp"

namespace dvd {

struct SolveRequest {
    // brute, greedy, rd-mw, vd-mw, dvd-mw, vd-tw, rd-tw
    std::string algorithm;
    // tree-decomposition algorithms use this when given, otherwise fall
    // back to the min-degree heuristic
    std::optional<TreeDecomposition> td;
    std::optional<int> size_cap;  // brute only
    int width_cap = 20;
    bool memo = false;
    bool parallel = true;
};

struct SolveReport {
    // empty only when brute exhausts its size cap
    std::optional<Solution> solution;
    double wall_ms = 0.0;
    bool valid = false;
};

// Dispatches to the named solver. Decomposition-based exact solvers run
// per connected component; greedy and the tree-decomposition solvers
// handle the whole graph at once. Every returned set is re-verified,
// and a set that fails verification raises SelfCheckError instead of
// being reported.
SolveReport run_solver(const DvdInstance& inst, const SolveRequest& req);

}  // namespace dvd
