#pragma once

#include <optional>
#include <vector>

#include "dvd/instance.hpp"

namespace dvd {

struct BruteOptions {
    std::optional<int> size_cap;            // stop after this set size
    std::optional<std::vector<int>> pool;   // candidate vertices, sorted
    int max_n = 24;                         // refuse larger graphs
    bool parallel = true;
};

// Exhaustive minimum search: sizes 0..n, subsets of each size in
// lexicographic order, first hit wins, so the answer is canonical.
// Returns nullopt when no valid set exists within the cap or pool.
// Throws RefusalError when the graph exceeds max_n.
std::optional<Solution> brute_force_min_dvd(const DvdInstance& inst,
                                            const BruteOptions& opts = {});

}  // namespace dvd
