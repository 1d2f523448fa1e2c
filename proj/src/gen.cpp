#include "dvd/gen.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "dvd/errors.hpp"

namespace dvd {

namespace {

// uniform double in [0, 1) built from the top 53 bits, so the stream
// does not depend on how the library maps engine output to reals
double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

int below(std::mt19937_64& rng, int bound) {
    return static_cast<int>(rng() % static_cast<uint64_t>(bound));
}

}  // namespace

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) throw ParseError("a cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    edges.push_back({0, n - 1});
    return Graph(n, std::move(edges));
}

Graph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw ParseError("grid needs positive dimensions");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
        }
    return Graph(rows * cols, std::move(edges));
}

Graph star_graph(int leaves) {
    if (leaves < 1) throw ParseError("a star needs at least one leaf");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return Graph(leaves + 1, std::move(edges));
}

Graph gnp_graph(int n, double p, uint64_t seed) {
    if (n < 1) throw ParseError("need at least one vertex");
    if (p < 0.0 || p > 1.0) throw ParseError("edge probability must be in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degree(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit(rng) < p) {
                edges.push_back({u, v});
                ++degree[u];
                ++degree[v];
            }
    if (n >= 2) {
        for (int v = 0; v < n; ++v) {
            if (degree[v] > 0) continue;
            int other = below(rng, n - 1);
            if (other >= v) ++other;
            edges.push_back({std::min(v, other), std::max(v, other)});
            ++degree[v];
            ++degree[other];
        }
    }
    return Graph(n, std::move(edges));
}

Graph random_tree(int n, uint64_t seed) {
    if (n < 1) throw ParseError("need at least one vertex");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({below(rng, v), v});
    return Graph(n, std::move(edges));
}

Graph random_connected_graph(int n, double p, uint64_t seed) {
    Graph g = gnp_graph(n, p, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    while (true) {
        Components comps = connected_components(g);
        if (comps.count <= 1) return g;
        std::vector<std::vector<int>> members(comps.count);
        for (int v = 0; v < n; ++v) members[comps.comp[v]].push_back(v);
        std::vector<std::pair<int, int>> edges(g.edges());
        for (int c = 1; c < comps.count; ++c) {
            int u = members[0][below(rng, static_cast<int>(members[0].size()))];
            int v = members[c][below(rng, static_cast<int>(members[c].size()))];
            edges.push_back({std::min(u, v), std::max(u, v)});
        }
        g = Graph(n, std::move(edges));
    }
}

DvdInstance uniform_instance(Graph g, int t, int d) {
    int n = g.num_vertices();
    return DvdInstance(std::move(g), std::vector<int>(n, t), std::vector<int>(n, d));
}

DvdInstance random_demands(Graph g, int tmax, int dmax, uint64_t seed) {
    if (tmax < 0 || dmax < 1) throw ParseError("need tmax >= 0 and dmax >= 1");
    std::mt19937_64 rng(seed);
    int n = g.num_vertices();
    std::vector<int> t(n), d(n);
    for (int v = 0; v < n; ++v) {
        d[v] = 1 + below(rng, dmax);
        int reach = static_cast<int>(ball(g, v, d[v]).size());
        int cap = std::min(tmax, reach);
        t[v] = below(rng, cap + 1);
    }
    return DvdInstance(std::move(g), std::move(t), std::move(d));
}

}  // namespace dvd
