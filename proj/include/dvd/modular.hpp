#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dvd/graph.hpp"

namespace dvd {

// Modular parse tree. Leaves are single vertices; a Union node is a
// disjoint union of its children, a Join node additionally connects
// every cross pair, and a Subst node substitutes the children into the
// stored quotient graph (child i adjacent to child j iff quotient has
// edge ij).
enum class NodeKind { kLeaf, kUnion, kJoin, kSubst };

struct ParseNode {
    NodeKind kind = NodeKind::kLeaf;
    int vertex = -1;            // leaves only
    std::vector<int> children;  // node ids, ordered by smallest contained vertex
    Graph quotient;             // Subst only, on children.size() vertices
};

struct ParseTree {
    std::vector<ParseNode> nodes;
    int root = -1;
    int n = 0;  // number of leaves
};

// Canonical decomposition: Union at disconnected subgraphs, Join at
// co-disconnected ones, otherwise a Subst on the maximal modular
// partition. Children are ordered by their smallest vertex.
ParseTree compute_modular_parse(const Graph& g);

// Rebuilds the graph a parse tree describes.
Graph expand_parse(const ParseTree& pt);

// Structural well-formedness plus expansion equality against g.
void validate_parse(const ParseTree& pt, const Graph& g);

// Largest Subst fanout; 2 if the tree has internal nodes but no Subst,
// 1 for a single leaf.
int parse_width(const ParseTree& pt);

// Sorted original-vertex list per node.
std::vector<std::vector<int>> parse_leaf_sets(const ParseTree& pt);

// Partition into classes of vertices with identical neighborhoods
// outside the pair (adjacency between the two is ignored). Every class
// induces a clique or an independent set; singletons count as cliques.
struct TypePartition {
    std::vector<int> cls;      // class id per vertex
    std::vector<char> clique;  // per class
    int count = 0;
};
TypePartition type_partition(const Graph& g);
int neighborhood_diversity(const Graph& g);

// Flat view of the root level: the root's child modules plus the
// quotient they live in, with quotient distances precomputed. Only
// defined for connected graphs (a Union root is rejected).
struct TopView {
    std::vector<std::vector<int>> modules;
    Graph quotient;
    std::vector<std::vector<int>> hdist;
};
TopView top_view(const ParseTree& pt);

// Text form, one node per line in preorder; indentation is cosmetic.
//   leaf <v>
//   union <k> / join <k>       followed by k child nodes
//   subst <p> <i>-<j> ...      quotient edges inline, then p children
ParseTree read_parse_tree(std::istream& in, const std::string& name);
void write_parse_tree(std::ostream& out, const ParseTree& pt);

}  // namespace dvd
