#include "dvd/modular.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "dvd/errors.hpp"

namespace dvd {

namespace {

using Words = std::vector<uint64_t>;

int nwords(int n) { return (n + 63) / 64; }

void bit_set(Words& b, int i) { b[i >> 6] |= uint64_t(1) << (i & 63); }
void bit_clear(Words& b, int i) { b[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
bool bit_test(const Words& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

bool any_bit(const Words& b) {
    for (uint64_t w : b)
        if (w) return true;
    return false;
}

int count_bits(const Words& b) {
    int c = 0;
    for (uint64_t w : b) c += std::popcount(w);
    return c;
}

bool intersects(const Words& a, const Words& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return true;
    return false;
}

bool intersects_complement(const Words& a, const Words& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return true;
    return false;
}

template <typename F>
void for_each_bit(const Words& b, F f) {
    for (size_t i = 0; i < b.size(); ++i) {
        uint64_t w = b[i];
        while (w) {
            f(static_cast<int>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

std::vector<Words> adjacency_bits(const Graph& g) {
    int w = nwords(g.num_vertices());
    std::vector<Words> rows(g.num_vertices(), Words(w, 0));
    for (auto [u, v] : g.edges()) {
        bit_set(rows[u], v);
        bit_set(rows[v], u);
    }
    return rows;
}

Words full_mask(int n) {
    Words b(nwords(n), ~uint64_t(0));
    int spare = nwords(n) * 64 - n;
    if (spare > 0) b.back() >>= spare;
    return b;
}

// Grows S to the smallest module containing it: any outside vertex with
// both a neighbor and a non-neighbor inside S must join.
void module_closure(const std::vector<Words>& adj, int n, Words& s) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (int w = 0; w < n; ++w) {
            if (bit_test(s, w)) continue;
            if (intersects(s, adj[w]) && intersects_complement(s, adj[w])) {
                bit_set(s, w);
                grew = true;
            }
        }
    }
}

// Maximal modular partition of a connected, co-connected graph: refine
// {N(v), rest} (v = vertex 0) until no outside vertex splits a class,
// then merge back the classes whose closure with v stays proper.
std::vector<std::vector<int>> maximal_modular_partition(const std::vector<Words>& adj, int n) {
    std::vector<Words> classes;
    {
        Words rest = full_mask(n);
        bit_clear(rest, 0);
        for (size_t i = 0; i < rest.size(); ++i) rest[i] &= ~adj[0][i];
        if (any_bit(adj[0])) classes.push_back(adj[0]);
        if (any_bit(rest)) classes.push_back(rest);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int w = 0; w < n; ++w) {
            size_t limit = classes.size();
            for (size_t i = 0; i < limit; ++i) {
                if (bit_test(classes[i], w)) continue;
                Words inter(classes[i].size());
                Words diff(classes[i].size());
                for (size_t k = 0; k < inter.size(); ++k) {
                    inter[k] = classes[i][k] & adj[w][k];
                    diff[k] = classes[i][k] & ~adj[w][k];
                }
                if (!any_bit(inter) || !any_bit(diff)) continue;
                classes[i] = std::move(diff);
                classes.push_back(std::move(inter));
                changed = true;
            }
        }
    }
    Words home(nwords(n), 0);
    bit_set(home, 0);
    std::vector<Words> outside;
    for (auto& c : classes) {
        Words probe = c;
        bit_set(probe, 0);
        module_closure(adj, n, probe);
        if (count_bits(probe) == n) {
            outside.push_back(std::move(c));
        } else {
            for (size_t k = 0; k < home.size(); ++k) home[k] |= c[k];
        }
    }
    std::vector<std::vector<int>> parts;
    auto to_list = [](const Words& b) {
        std::vector<int> out;
        for_each_bit(b, [&](int v) { out.push_back(v); });
        return out;
    };
    parts.push_back(to_list(home));
    for (auto& c : outside) parts.push_back(to_list(c));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    if (parts.size() < 2)
        throw SelfCheckError("modular partition degenerated on a prime graph");
    return parts;
}

struct Builder {
    const Graph& g;
    ParseTree pt;

    int build(const std::vector<int>& verts) {
        if (verts.size() == 1) {
            ParseNode node;
            node.kind = NodeKind::kLeaf;
            node.vertex = verts[0];
            pt.nodes.push_back(std::move(node));
            return static_cast<int>(pt.nodes.size()) - 1;
        }
        auto sub = induced_subgraph(g, verts);
        const Graph& h = sub.graph;
        int k = h.num_vertices();

        auto comps = connected_components(h);
        if (comps.count > 1) {
            return emit(NodeKind::kUnion, group_by(comps.comp, comps.count, verts), {});
        }

        auto rows = adjacency_bits(h);
        std::vector<int> co(k, -1);
        int co_count = 0;
        {
            Words unvisited = full_mask(k);
            for (int v = 0; v < k; ++v) {
                if (co[v] != -1) continue;
                int id = co_count++;
                co[v] = id;
                bit_clear(unvisited, v);
                std::vector<int> stack{v};
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    Words frontier(unvisited.size());
                    for (size_t i = 0; i < frontier.size(); ++i)
                        frontier[i] = unvisited[i] & ~rows[u][i];
                    for_each_bit(frontier, [&](int w) {
                        co[w] = id;
                        bit_clear(unvisited, w);
                        stack.push_back(w);
                    });
                }
            }
        }
        if (co_count > 1) {
            return emit(NodeKind::kJoin, group_by(co, co_count, verts), {});
        }

        auto parts_local = maximal_modular_partition(rows, k);
        std::vector<std::vector<int>> parts;
        parts.reserve(parts_local.size());
        for (auto& p : parts_local) {
            std::vector<int> orig;
            orig.reserve(p.size());
            for (int v : p) orig.push_back(verts[v]);
            parts.push_back(std::move(orig));
        }
        int p = static_cast<int>(parts.size());
        std::vector<std::pair<int, int>> qedges;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (bit_test(rows[parts_local[i][0]], parts_local[j][0]))
                    qedges.emplace_back(i, j);
        return emit(NodeKind::kSubst, std::move(parts), Graph(p, std::move(qedges)));
    }

    static std::vector<std::vector<int>> group_by(const std::vector<int>& label, int count,
                                                  const std::vector<int>& verts) {
        std::vector<std::vector<int>> groups(count);
        for (size_t i = 0; i < label.size(); ++i) groups[label[i]].push_back(verts[i]);
        return groups;
    }

    int emit(NodeKind kind, std::vector<std::vector<int>> groups, Graph quotient) {
        std::vector<int> children;
        children.reserve(groups.size());
        for (auto& grp : groups) children.push_back(build(grp));
        ParseNode node;
        node.kind = kind;
        node.children = std::move(children);
        node.quotient = std::move(quotient);
        pt.nodes.push_back(std::move(node));
        return static_cast<int>(pt.nodes.size()) - 1;
    }
};

}  // namespace

ParseTree compute_modular_parse(const Graph& g) {
    if (g.num_vertices() == 0) throw ParseError("modular parse needs at least one vertex");
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    Builder b{g, {}};
    b.pt.root = b.build(all);
    b.pt.n = g.num_vertices();
    return std::move(b.pt);
}

std::vector<std::vector<int>> parse_leaf_sets(const ParseTree& pt) {
    std::vector<std::vector<int>> sets(pt.nodes.size());
    // Children always precede their parent in construction order, but a
    // hand-written tree may not respect that, so resolve recursively.
    std::vector<char> done(pt.nodes.size(), 0);
    auto fill = [&](auto&& self, int id) -> void {
        if (done[id]) return;
        done[id] = 1;
        const ParseNode& node = pt.nodes[id];
        if (node.kind == NodeKind::kLeaf) {
            sets[id] = {node.vertex};
            return;
        }
        for (int c : node.children) {
            self(self, c);
            sets[id].insert(sets[id].end(), sets[c].begin(), sets[c].end());
        }
        std::sort(sets[id].begin(), sets[id].end());
    };
    for (size_t i = 0; i < pt.nodes.size(); ++i) fill(fill, static_cast<int>(i));
    return sets;
}

Graph expand_parse(const ParseTree& pt) {
    auto sets = parse_leaf_sets(pt);
    std::vector<std::pair<int, int>> edges;
    for (const auto& node : pt.nodes) {
        if (node.kind == NodeKind::kLeaf || node.kind == NodeKind::kUnion) continue;
        int k = static_cast<int>(node.children.size());
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (node.kind == NodeKind::kSubst && !node.quotient.has_edge(i, j)) continue;
                for (int u : sets[node.children[i]])
                    for (int v : sets[node.children[j]]) edges.emplace_back(u, v);
            }
        }
    }
    return Graph(pt.n, std::move(edges));
}

void validate_parse(const ParseTree& pt, const Graph& g) {
    int total = static_cast<int>(pt.nodes.size());
    if (pt.root < 0 || pt.root >= total) throw ParseError("parse tree: bad root id");
    std::vector<int> seen(total, 0);
    std::vector<int> leaves;
    auto walk = [&](auto&& self, int id) -> void {
        if (id < 0 || id >= total) throw ParseError("parse tree: child id out of range");
        if (seen[id]++) throw ParseError("parse tree: node used twice");
        const ParseNode& node = pt.nodes[id];
        if (node.kind == NodeKind::kLeaf) {
            if (!node.children.empty()) throw ParseError("parse tree: leaf with children");
            leaves.push_back(node.vertex);
            return;
        }
        if (node.children.size() < 2)
            throw ParseError("parse tree: internal node needs at least two children");
        if (node.kind == NodeKind::kSubst &&
            node.quotient.num_vertices() != static_cast<int>(node.children.size()))
            throw ParseError("parse tree: quotient size disagrees with child count");
        for (int c : node.children) self(self, c);
    };
    walk(walk, pt.root);
    for (int i = 0; i < total; ++i)
        if (!seen[i]) throw ParseError("parse tree: unreachable node");
    if (pt.n != g.num_vertices() || static_cast<int>(leaves.size()) != g.num_vertices())
        throw ParseError("parse tree: leaf count disagrees with graph");
    std::vector<char> used(g.num_vertices(), 0);
    for (int v : leaves) {
        if (v < 0 || v >= g.num_vertices()) throw ParseError("parse tree: leaf out of range");
        if (used[v]) throw ParseError("parse tree: duplicate leaf vertex");
        used[v] = 1;
    }
    Graph expanded = expand_parse(pt);
    if (expanded.edges() != g.edges())
        throw ParseError("parse tree: expansion does not match the graph");
}

int parse_width(const ParseTree& pt) {
    int width = 1;
    for (const auto& node : pt.nodes) {
        if (node.kind == NodeKind::kUnion || node.kind == NodeKind::kJoin)
            width = std::max(width, 2);
        else if (node.kind == NodeKind::kSubst)
            width = std::max(width, static_cast<int>(node.children.size()));
    }
    return width;
}

TypePartition type_partition(const Graph& g) {
    int n = g.num_vertices();
    auto rows = adjacency_bits(g);
    TypePartition tp;
    tp.cls.assign(n, -1);
    std::vector<int> reps;
    auto same_type = [&](int a, int b) {
        Words ra = rows[a], rb = rows[b];
        bit_clear(ra, a);
        bit_clear(ra, b);
        bit_clear(rb, a);
        bit_clear(rb, b);
        return ra == rb;
    };
    for (int v = 0; v < n; ++v) {
        for (size_t c = 0; c < reps.size(); ++c) {
            if (same_type(reps[c], v)) {
                tp.cls[v] = static_cast<int>(c);
                break;
            }
        }
        if (tp.cls[v] == -1) {
            tp.cls[v] = static_cast<int>(reps.size());
            reps.push_back(v);
        }
    }
    tp.count = static_cast<int>(reps.size());
    tp.clique.assign(tp.count, 1);
    std::vector<int> first(tp.count, -1);
    for (int v = 0; v < n; ++v) {
        int c = tp.cls[v];
        if (first[c] == -1)
            first[c] = v;
        else if (!g.has_edge(first[c], v))
            tp.clique[c] = 0;
    }
    return tp;
}

int neighborhood_diversity(const Graph& g) { return type_partition(g).count; }

TopView top_view(const ParseTree& pt) {
    const ParseNode& root = pt.nodes[pt.root];
    TopView tv;
    if (root.kind == NodeKind::kUnion)
        throw InapplicableError("top view: graph is disconnected");
    auto sets = parse_leaf_sets(pt);
    if (root.kind == NodeKind::kLeaf) {
        tv.modules = {{root.vertex}};
        tv.quotient = Graph(1, {});
    } else {
        for (int c : root.children) tv.modules.push_back(sets[c]);
        int p = static_cast<int>(root.children.size());
        if (root.kind == NodeKind::kSubst) {
            tv.quotient = root.quotient;
        } else {
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j) edges.emplace_back(i, j);
            tv.quotient = Graph(p, std::move(edges));
        }
    }
    tv.hdist = apsp(tv.quotient);
    return tv;
}

namespace {

ParseError tree_err(const std::string& name, int line, const std::string& msg) {
    return ParseError(name + ":" + std::to_string(line) + ": " + msg);
}

struct TreeLine {
    int lineno;
    std::vector<std::string> tokens;
};

int tree_int(const std::string& tok, const std::string& name, int line) {
    size_t pos = 0;
    long val = 0;
    try {
        val = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw tree_err(name, line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw tree_err(name, line, "expected integer, got '" + tok + "'");
    return static_cast<int>(val);
}

struct TreeParser {
    const std::vector<TreeLine>& lines;
    const std::string& name;
    size_t pos = 0;
    ParseTree pt;

    int parse_node() {
        if (pos >= lines.size())
            throw ParseError(name + ": unexpected end of parse tree");
        const TreeLine& ln = lines[pos++];
        const auto& tok = ln.tokens;
        if (tok[0] == "leaf") {
            if (tok.size() != 2) throw tree_err(name, ln.lineno, "leaf line must be 'leaf <v>'");
            int v = tree_int(tok[1], name, ln.lineno);
            if (v < 1) throw tree_err(name, ln.lineno, "leaf vertex must be >= 1");
            ParseNode node;
            node.kind = NodeKind::kLeaf;
            node.vertex = v - 1;
            pt.nodes.push_back(std::move(node));
            return static_cast<int>(pt.nodes.size()) - 1;
        }
        NodeKind kind;
        if (tok[0] == "union")
            kind = NodeKind::kUnion;
        else if (tok[0] == "join")
            kind = NodeKind::kJoin;
        else if (tok[0] == "subst")
            kind = NodeKind::kSubst;
        else
            throw tree_err(name, ln.lineno, "unknown node type '" + tok[0] + "'");
        if (tok.size() < 2) throw tree_err(name, ln.lineno, "missing child count");
        int k = tree_int(tok[1], name, ln.lineno);
        if (k < 2) throw tree_err(name, ln.lineno, "child count must be >= 2");
        Graph quotient;
        if (kind == NodeKind::kSubst) {
            std::vector<std::pair<int, int>> qedges;
            for (size_t i = 2; i < tok.size(); ++i) {
                auto dash = tok[i].find('-');
                if (dash == std::string::npos)
                    throw tree_err(name, ln.lineno, "quotient edge must look like <i>-<j>");
                int a = tree_int(tok[i].substr(0, dash), name, ln.lineno);
                int b = tree_int(tok[i].substr(dash + 1), name, ln.lineno);
                if (a < 1 || a > k || b < 1 || b > k)
                    throw tree_err(name, ln.lineno, "quotient edge endpoint out of range");
                qedges.emplace_back(a - 1, b - 1);
            }
            try {
                quotient = Graph(k, std::move(qedges));
            } catch (const ParseError& e) {
                throw tree_err(name, ln.lineno, e.what());
            }
        } else if (tok.size() != 2) {
            throw tree_err(name, ln.lineno, "unexpected tokens after child count");
        }
        std::vector<int> children;
        children.reserve(k);
        for (int i = 0; i < k; ++i) children.push_back(parse_node());
        ParseNode node;
        node.kind = kind;
        node.children = std::move(children);
        node.quotient = std::move(quotient);
        pt.nodes.push_back(std::move(node));
        return static_cast<int>(pt.nodes.size()) - 1;
    }
};

}  // namespace

ParseTree read_parse_tree(std::istream& in, const std::string& name) {
    std::vector<TreeLine> lines;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::istringstream ss(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0] == "c") continue;
        lines.push_back({lineno, std::move(tokens)});
    }
    if (lines.empty()) throw ParseError(name + ": empty parse tree");
    TreeParser parser{lines, name};
    parser.pt.root = parser.parse_node();
    if (parser.pos != lines.size())
        throw tree_err(name, lines[parser.pos].lineno, "trailing content after root node");
    int n = 0;
    for (const auto& node : parser.pt.nodes)
        if (node.kind == NodeKind::kLeaf) ++n;
    parser.pt.n = n;
    std::vector<char> used(n, 0);
    for (const auto& node : parser.pt.nodes) {
        if (node.kind != NodeKind::kLeaf) continue;
        if (node.vertex >= n)
            throw ParseError(name + ": leaf vertices must be exactly 1.." + std::to_string(n));
        if (used[node.vertex])
            throw ParseError(name + ": duplicate leaf vertex " + std::to_string(node.vertex + 1));
        used[node.vertex] = 1;
    }
    return std::move(parser.pt);
}

void write_parse_tree(std::ostream& out, const ParseTree& pt) {
    auto emit = [&](auto&& self, int id, int depth) -> void {
        const ParseNode& node = pt.nodes[id];
        for (int i = 0; i < depth; ++i) out << "  ";
        switch (node.kind) {
            case NodeKind::kLeaf:
                out << "leaf " << node.vertex + 1 << "\n";
                return;
            case NodeKind::kUnion:
                out << "union " << node.children.size() << "\n";
                break;
            case NodeKind::kJoin:
                out << "join " << node.children.size() << "\n";
                break;
            case NodeKind::kSubst:
                out << "subst " << node.children.size();
                for (auto [u, v] : node.quotient.edges()) out << " " << u + 1 << "-" << v + 1;
                out << "\n";
                break;
        }
        for (int c : node.children) self(self, c, depth + 1);
    };
    emit(emit, pt.root, 0);
}

}  // namespace dvd
