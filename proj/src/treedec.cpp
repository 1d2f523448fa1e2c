#include "dvd/treedec.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dvd/errors.hpp"

namespace dvd {

int TreeDecomposition::width() const {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
}

void validate_td(const TreeDecomposition& td, const Graph& g) {
    int nb = static_cast<int>(td.bags.size());
    if (nb == 0) throw ParseError("tree decomposition: no bags");
    if (td.n != g.num_vertices())
        throw ParseError("tree decomposition: vertex count disagrees with graph");
    for (const auto& bag : td.bags) {
        for (size_t i = 0; i < bag.size(); ++i) {
            if (bag[i] < 0 || bag[i] >= g.num_vertices())
                throw ParseError("tree decomposition: bag vertex out of range");
            if (i > 0 && bag[i] <= bag[i - 1])
                throw ParseError("tree decomposition: bag must be sorted and duplicate-free");
        }
    }
    if (static_cast<int>(td.tree_edges.size()) != nb - 1)
        throw ParseError("tree decomposition: bag graph is not a tree");
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || a >= nb || b < 0 || b >= nb || a == b)
            throw ParseError("tree decomposition: bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> reached(nb, 0);
    std::vector<int> stack{0};
    reached[0] = 1;
    int seen = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
            if (!reached[w]) {
                reached[w] = 1;
                ++seen;
                stack.push_back(w);
            }
    }
    if (seen != nb) throw ParseError("tree decomposition: bag graph is not a tree");

    std::vector<int> holding(g.num_vertices(), 0);
    for (const auto& bag : td.bags)
        for (int v : bag) ++holding[v];
    for (int v = 0; v < g.num_vertices(); ++v)
        if (holding[v] == 0)
            throw ParseError("tree decomposition: vertex " + std::to_string(v + 1) +
                             " is in no bag");

    auto bag_has = [&](int b, int v) {
        const auto& bag = td.bags[b];
        return std::binary_search(bag.begin(), bag.end(), v);
    };
    std::vector<std::vector<int>> bags_of(g.num_vertices());
    for (int b = 0; b < nb; ++b)
        for (int v : td.bags[b]) bags_of[v].push_back(b);
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (int b : bags_of[u])
            if (bag_has(b, v)) {
                found = true;
                break;
            }
        if (!found)
            throw ParseError("tree decomposition: edge (" + std::to_string(u + 1) + "," +
                             std::to_string(v + 1) + ") is in no bag");
    }

    // Subtree condition. The bags holding v induce a forest inside the
    // tree; it is connected exactly when the induced edge count is one
    // less than the bag count.
    std::vector<int> inner_edges(g.num_vertices(), 0);
    for (auto [a, b] : td.tree_edges) {
        const auto& small = td.bags[a].size() <= td.bags[b].size() ? td.bags[a] : td.bags[b];
        int other = td.bags[a].size() <= td.bags[b].size() ? b : a;
        for (int v : small)
            if (bag_has(other, v)) ++inner_edges[v];
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (holding[v] - inner_edges[v] != 1)
            throw ParseError("tree decomposition: bags of vertex " + std::to_string(v + 1) +
                             " do not form a subtree");
}

TreeDecomposition min_degree_td(const Graph& g) {
    int n = g.num_vertices();
    TreeDecomposition td;
    td.n = n;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> alive(n, 1);
    std::vector<int> position(n, -1);
    td.bags.resize(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (best == -1 || adj[v].size() < adj[best].size()) best = v;
        }
        std::vector<int> bag{best};
        bag.insert(bag.end(), adj[best].begin(), adj[best].end());
        std::sort(bag.begin(), bag.end());
        td.bags[step] = bag;
        position[best] = step;
        for (int a : adj[best])
            for (int b : adj[best])
                if (a < b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
        for (int a : adj[best]) adj[a].erase(best);
        adj[best].clear();
        alive[best] = 0;
    }
    // Attach each bag to the bag of its earliest-eliminated remaining
    // member; bags with no remaining members chain to the next step.
    std::vector<int> elim_of(n);
    for (int v = 0; v < n; ++v)
        if (position[v] != -1) elim_of[position[v]] = v;
    for (int step = 0; step < n - 1; ++step) {
        int parent = -1;
        for (int v : td.bags[step]) {
            if (v == elim_of[step]) continue;
            if (parent == -1 || position[v] < position[parent]) parent = v;
        }
        int pbag = parent == -1 ? step + 1 : position[parent];
        td.tree_edges.emplace_back(step, pbag);
    }
    return td;
}

namespace {

struct NiceBuilder {
    NiceTd out;

    int add(NiceKind kind, int vertex, std::vector<int> bag, int left, int right) {
        NiceNode node;
        node.kind = kind;
        node.vertex = vertex;
        node.bag = std::move(bag);
        node.left = left;
        node.right = right;
        out.nodes.push_back(std::move(node));
        return static_cast<int>(out.nodes.size()) - 1;
    }

    // Chain of introduces from an empty leaf up to `bag`.
    int chain_from_empty(const std::vector<int>& bag) {
        int id = add(NiceKind::kLeaf, -1, {}, -1, -1);
        std::vector<int> cur;
        for (int v : bag) {
            cur.push_back(v);
            id = add(NiceKind::kIntroduce, v, cur, id, -1);
        }
        return id;
    }

    // Morphs a subtree rooted at bag `from` into one rooted at bag `to`:
    // forget everything not in `to`, then introduce what is missing.
    int morph(int id, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            id = add(NiceKind::kForget, v, cur, id, -1);
        }
        for (int v : to) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            id = add(NiceKind::kIntroduce, v, cur, id, -1);
        }
        return id;
    }
};

}  // namespace

NiceTd to_nice(const TreeDecomposition& td) {
    int nb = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    NiceBuilder nb_builder;
    // Iterative DFS from bag 0, children processed in ascending order.
    std::vector<int> parent(nb, -2);
    std::vector<int> order;
    {
        std::vector<int> stack{0};
        parent[0] = -1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (int w : adj[u])
                if (parent[w] == -2) {
                    parent[w] = u;
                    stack.push_back(w);
                }
        }
    }
    std::vector<int> result(nb, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int b = *it;
        std::vector<int> child_trees;
        for (int w : adj[b])
            if (parent[w] == b)
                child_trees.push_back(nb_builder.morph(result[w], td.bags[w], td.bags[b]));
        int id;
        if (child_trees.empty()) {
            id = nb_builder.chain_from_empty(td.bags[b]);
        } else {
            id = child_trees[0];
            for (size_t i = 1; i < child_trees.size(); ++i)
                id = nb_builder.add(NiceKind::kJoin, -1, td.bags[b], id, child_trees[i]);
        }
        result[b] = id;
    }
    int root = nb_builder.morph(result[0], td.bags[0], {});
    nb_builder.out.root = root;
    nb_builder.out.width = td.width();
    return std::move(nb_builder.out);
}

TreeDecomposition read_td(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    int nbags = -1, n = -1;
    std::vector<std::vector<int>> bags;
    std::vector<char> bag_seen;
    std::vector<std::pair<int, int>> edges;
    auto fail = [&](const std::string& msg) {
        return ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        auto as_int = [&](const std::string& s) {
            size_t pos = 0;
            long val = 0;
            try {
                val = std::stol(s, &pos);
            } catch (const std::exception&) {
                throw fail("expected integer, got '" + s + "'");
            }
            if (pos != s.size()) throw fail("expected integer, got '" + s + "'");
            return static_cast<int>(val);
        };
        if (tok[0] == "s") {
            if (nbags != -1) throw fail("duplicate s line");
            if (tok.size() != 5 || tok[1] != "td")
                throw fail("s line must be 's td <#bags> <max bag size> <n>'");
            nbags = as_int(tok[2]);
            n = as_int(tok[4]);
            if (nbags < 1) throw fail("need at least one bag");
            if (n < 0) throw fail("vertex count must be non-negative");
            bags.assign(nbags, {});
            bag_seen.assign(nbags, 0);
        } else if (tok[0] == "b") {
            if (nbags == -1) throw fail("b line before s line");
            if (tok.size() < 2) throw fail("b line needs a bag id");
            int id = as_int(tok[1]);
            if (id < 1 || id > nbags) throw fail("bag id out of range");
            if (bag_seen[id - 1]) throw fail("duplicate bag id " + tok[1]);
            bag_seen[id - 1] = 1;
            std::vector<int> bag;
            for (size_t i = 2; i < tok.size(); ++i) {
                int v = as_int(tok[i]);
                if (v < 1 || v > n) throw fail("bag vertex out of range");
                bag.push_back(v - 1);
            }
            std::sort(bag.begin(), bag.end());
            for (size_t i = 1; i < bag.size(); ++i)
                if (bag[i] == bag[i - 1]) throw fail("duplicate vertex in bag");
            bags[id - 1] = std::move(bag);
        } else {
            if (nbags == -1) throw fail("tree edge before s line");
            if (tok.size() != 2) throw fail("tree edge must be two bag ids");
            int a = as_int(tok[0]);
            int b = as_int(tok[1]);
            if (a < 1 || a > nbags || b < 1 || b > nbags)
                throw fail("tree edge bag id out of range");
            edges.emplace_back(a - 1, b - 1);
        }
    }
    if (nbags == -1) throw ParseError(name + ": missing s line");
    for (int i = 0; i < nbags; ++i)
        if (!bag_seen[i])
            throw ParseError(name + ": bag " + std::to_string(i + 1) + " never defined");
    TreeDecomposition td;
    td.bags = std::move(bags);
    td.tree_edges = std::move(edges);
    td.n = n;
    return td;
}

TreeDecomposition load_td(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_td(in, path);
}

void write_td(std::ostream& out, const TreeDecomposition& td) {
    int maxbag = 0;
    for (const auto& b : td.bags) maxbag = std::max(maxbag, static_cast<int>(b.size()));
    out << "s td " << td.bags.size() << " " << maxbag << " " << td.n << "\n";
    for (size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << " " << v + 1;
        out << "\n";
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << " " << b + 1 << "\n";
}

}  // namespace dvd
