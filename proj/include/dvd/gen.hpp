#pragma once

#include <cstdint>

#include "dvd/graph.hpp"
#include "dvd/instance.hpp"

namespace dvd {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph grid_graph(int rows, int cols);

// leaves + 1 vertices; the center has id 0
Graph star_graph(int leaves);

// Erdos-Renyi with a fixed seed; vertices that come out isolated get
// one extra random edge so domination stays feasible.
Graph gnp_graph(int n, double p, uint64_t seed);

// Uniform random attachment tree.
Graph random_tree(int n, uint64_t seed);

// gnp, then random edges between components until one remains.
Graph random_connected_graph(int n, double p, uint64_t seed);

DvdInstance uniform_instance(Graph g, int t = 1, int d = 1);

// Per-vertex radius in [1, dmax] and demand in [0, min(tmax, ball)],
// keeping every vertex individually satisfiable.
DvdInstance random_demands(Graph g, int tmax, int dmax, uint64_t seed);

}  // namespace dvd
