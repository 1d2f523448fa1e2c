#include "dvd/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include <omp.h>

#include "dvd/errors.hpp"

namespace dvd {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0) throw ParseError("graph: vertex count must be non-negative");
    adj_.resize(n);
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("graph: edge endpoint out of range: (" + std::to_string(u) +
                             "," + std::to_string(v) + ")");
        if (u == v)
            throw ParseError("graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw ParseError("graph: duplicate edge (" + std::to_string(edges[i].first) +
                             "," + std::to_string(edges[i].second) + ")");
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
}

bool Graph::has_edge(int u, int v) const {
    const auto& row = adj_[u];
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.num_vertices(), kUnreached);
    std::vector<int> queue;
    queue.reserve(g.num_vertices());
    dist[source] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int w : g.neighbors(u)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<int> ball(const Graph& g, int v, int radius) {
    if (radius < 1) throw ParseError("ball: radius must be >= 1");
    auto dist = bfs_distances(g, v);
    std::vector<int> out;
    for (int u = 0; u < g.num_vertices(); ++u)
        if (u != v && dist[u] != kUnreached && dist[u] <= radius) out.push_back(u);
    return out;
}

Components connected_components(const Graph& g) {
    Components c;
    c.comp.assign(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (c.comp[v] != -1) continue;
        int id = c.count++;
        std::vector<int> stack{v};
        c.comp[v] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u)) {
                if (c.comp[w] == -1) {
                    c.comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return c;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<int> to_new(g.num_vertices(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        if (v < 0 || v >= g.num_vertices())
            throw ParseError("induced_subgraph: vertex out of range");
        if (to_new[v] != -1)
            throw ParseError("induced_subgraph: duplicate vertex in selection");
        if (i > 0 && vertices[i] < vertices[i - 1])
            throw ParseError("induced_subgraph: vertex list must be sorted");
        to_new[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (to_new[u] != -1 && to_new[v] != -1) edges.emplace_back(to_new[u], to_new[v]);
    return {Graph(static_cast<int>(vertices.size()), std::move(edges)), vertices};
}

std::vector<std::vector<int>> apsp(const Graph& g) {
    std::vector<std::vector<int>> rows(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) rows[v] = bfs_distances(g, v);
    return rows;
}

std::vector<std::vector<int>> apsp_parallel(const Graph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<int>> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (int v = 0; v < n; ++v) rows[v] = bfs_distances(g, v);
    return rows;
}

DistanceOracle::DistanceOracle(const Graph& g, int cache_threshold)
    : g_(&g), full_(g.num_vertices() <= cache_threshold) {
    if (full_) rows_ = apsp(g);
}

const std::vector<int>& DistanceOracle::row(int u) const {
    if (full_) return rows_[u];
    auto it = lazy_.find(u);
    if (it == lazy_.end()) it = lazy_.emplace(u, bfs_distances(*g_, u)).first;
    return it->second;
}

int DistanceOracle::distance(int u, int v) const { return row(u)[v]; }

}  // namespace dvd
