#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dvd/graph.hpp"

namespace dvd {

// Tree decomposition: bags of vertices connected by tree edges. Valid
// when every vertex appears in some bag, every graph edge lives inside
// some bag, and the bags containing any fixed vertex form a subtree.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // sorted, unique
    std::vector<std::pair<int, int>> tree_edges;
    int n = 0;  // vertices of the decomposed graph

    int width() const;
};

void validate_td(const TreeDecomposition& td, const Graph& g);

// Min-degree elimination heuristic. Always returns a valid
// decomposition; width is whatever the fill-in produces.
TreeDecomposition min_degree_td(const Graph& g);

// Nice form: empty leaves and root, Introduce/Forget chains of single
// vertices, binary Join nodes with equal child bags. Nodes are stored
// children-before-parents so a single forward sweep is a valid DP order.
enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
    NiceKind kind = NiceKind::kLeaf;
    int vertex = -1;  // introduce/forget
    std::vector<int> bag;
    int left = -1;
    int right = -1;  // joins only
};

struct NiceTd {
    std::vector<NiceNode> nodes;
    int root = -1;
    int width = 0;
};

NiceTd to_nice(const TreeDecomposition& td);

// PACE-style text form:
//   s td <#bags> <max bag size> <n>
//   b <bag id> <v1> <v2> ...
//   <bag id> <bag id>            (tree edges)
TreeDecomposition read_td(std::istream& in, const std::string& name);
TreeDecomposition load_td(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td);

}  // namespace dvd
