#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dvd {

inline constexpr int kUnreached = -1;

// Simple undirected graph on vertices 0..n-1. Adjacency lists are kept
// sorted so membership tests can binary-search and iteration order is
// deterministic everywhere.
class Graph {
  public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;

  private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;  // normalized u < v, sorted
};

// BFS distances from source; kUnreached for vertices in other components.
std::vector<int> bfs_distances(const Graph& g, int source);

// Vertices at distance 1..radius from v, sorted ascending. v itself is
// excluded. radius must be >= 1.
std::vector<int> ball(const Graph& g, int v, int radius);

// Component id per vertex (ids are 0-based, assigned by smallest member).
struct Components {
    std::vector<int> comp;
    int count = 0;
};
Components connected_components(const Graph& g);

// Subgraph induced by `vertices` (must be sorted, unique, in range).
// to_parent maps new ids back to ids in g.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// All-pairs shortest paths via one BFS per source. The parallel variant
// distributes sources across threads and returns identical output.
std::vector<std::vector<int>> apsp(const Graph& g);
std::vector<std::vector<int>> apsp_parallel(const Graph& g);

// Distance queries backed by a full matrix for small graphs and by
// lazily cached BFS rows above the threshold.
class DistanceOracle {
  public:
    explicit DistanceOracle(const Graph& g, int cache_threshold = 2048);

    int distance(int u, int v) const;
    const std::vector<int>& row(int u) const;

  private:
    const Graph* g_;
    bool full_;
    mutable std::vector<std::vector<int>> rows_;
    mutable std::unordered_map<int, std::vector<int>> lazy_;
};

}  // namespace dvd
