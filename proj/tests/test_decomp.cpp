#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dvd/errors.hpp"
#include "dvd/gen.hpp"
#include "dvd/graph.hpp"
#include "dvd/modular.hpp"
#include "dvd/treedec.hpp"

using namespace dvd;

TEST_CASE("parse of a path of three vertices") {
    ParseTree pt = compute_modular_parse(path_graph(3));
    validate_parse(pt, path_graph(3));
    const ParseNode& root = pt.nodes[pt.root];
    REQUIRE(root.kind == NodeKind::kJoin);
    REQUIRE(root.children.size() == 2);
    // ends {v1, v3} form one module, the middle vertex the other
    const ParseNode& ends = pt.nodes[root.children[0]];
    CHECK(ends.kind == NodeKind::kUnion);
    CHECK(pt.nodes[root.children[1]].vertex == 1);
}

TEST_CASE("parse kinds for basic shapes") {
    auto root_kind = [](const Graph& g) {
        ParseTree pt = compute_modular_parse(g);
        return pt.nodes[pt.root].kind;
    };
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(root_kind(k4) == NodeKind::kJoin);

    Graph e3(3, {});
    CHECK(root_kind(e3) == NodeKind::kUnion);

    CHECK(root_kind(cycle_graph(5)) == NodeKind::kSubst);
    CHECK(root_kind(path_graph(1)) == NodeKind::kLeaf);
}

TEST_CASE("parse trees validate and round-trip on random graphs") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        int n = 2 + static_cast<int>(seed % 11);
        Graph g = gnp_graph(n, 0.2 + 0.05 * static_cast<double>(seed % 9), seed);
        ParseTree pt = compute_modular_parse(g);
        validate_parse(pt, g);

        std::ostringstream out;
        write_parse_tree(out, pt);
        std::istringstream in(out.str());
        ParseTree back = read_parse_tree(in, "mem");
        validate_parse(back, g);
        Graph expanded = expand_parse(back);
        CHECK(expanded.edges() == g.edges());
    }
}

TEST_CASE("parse width of a cycle is its length") {
    CHECK(parse_width(compute_modular_parse(cycle_graph(6))) == 6);
    CHECK(parse_width(compute_modular_parse(path_graph(4))) == 4);
    CHECK(parse_width(compute_modular_parse(path_graph(3))) == 2);
}

TEST_CASE("every parse node is a module") {
    for (uint64_t seed = 100; seed < 160; ++seed) {
        int n = 3 + static_cast<int>(seed % 9);
        Graph g = gnp_graph(n, 0.35, seed);
        ParseTree pt = compute_modular_parse(g);
        auto sets = parse_leaf_sets(pt);
        for (const auto& mod : sets) {
            std::set<int> inside(mod.begin(), mod.end());
            // all members must see the same vertices outside the set
            std::set<int> outside_nbrs;
            bool first = true;
            for (int v : mod) {
                std::set<int> nbrs;
                for (int u : g.neighbors(v))
                    if (!inside.count(u)) nbrs.insert(u);
                if (first) {
                    outside_nbrs = nbrs;
                    first = false;
                } else {
                    CHECK(nbrs == outside_nbrs);
                }
            }
        }
    }
}

TEST_CASE("type classes are modules and count matches") {
    Graph c4 = cycle_graph(4);
    CHECK(neighborhood_diversity(c4) == 2);

    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(neighborhood_diversity(k4) == 1);
    TypePartition tp = type_partition(k4);
    CHECK(tp.clique[0]);

    Graph star = star_graph(4);
    CHECK(neighborhood_diversity(star) == 2);
}

TEST_CASE("top view of a cycle is the cycle itself") {
    ParseTree pt = compute_modular_parse(cycle_graph(6));
    TopView tv = top_view(pt);
    REQUIRE(tv.modules.size() == 6);
    CHECK(tv.quotient.num_edges() == 6);
    CHECK(tv.hdist[0][3] == 3);
    CHECK(tv.hdist[0][1] == 1);
}

TEST_CASE("top view rejects disconnected graphs") {
    Graph g(4, {{0, 1}, {2, 3}});
    ParseTree pt = compute_modular_parse(g);
    CHECK_THROWS_AS(top_view(pt), InapplicableError);
}

TEST_CASE("vertices sharing a top module are within distance two") {
    for (uint64_t seed = 300; seed < 360; ++seed) {
        int n = 4 + static_cast<int>(seed % 8);
        Graph g = random_connected_graph(n, 0.4, seed);
        if (g.num_vertices() < 2) continue;
        ParseTree pt = compute_modular_parse(g);
        TopView tv = top_view(pt);
        auto dist = apsp(g);
        for (const auto& mod : tv.modules)
            for (int a : mod)
                for (int b : mod)
                    if (a != b) CHECK(dist[a][b] <= 2);
    }
}

TEST_CASE("quotient distance equals graph distance across modules") {
    for (uint64_t seed = 400; seed < 440; ++seed) {
        int n = 4 + static_cast<int>(seed % 8);
        Graph g = random_connected_graph(n, 0.35, seed);
        ParseTree pt = compute_modular_parse(g);
        TopView tv = top_view(pt);
        auto dist = apsp(g);
        for (size_t i = 0; i < tv.modules.size(); ++i)
            for (size_t j = i + 1; j < tv.modules.size(); ++j)
                for (int a : tv.modules[i])
                    for (int b : tv.modules[j])
                        CHECK(dist[a][b] == tv.hdist[i][j]);
    }
}

TEST_CASE("parse reader rejects malformed trees") {
    auto expect_throw = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_parse_tree(in, "bad"), ParseError);
    };
    expect_throw("union 2\nleaf 1\n");           // missing child
    expect_throw("leaf 1\nleaf 2\n");            // trailing node
    expect_throw("union 2\nleaf 1\nleaf 3\n");   // leaf ids not 1..n
    expect_throw("subst 2 9-1\nleaf 1\nleaf 2\n");
}

TEST_CASE("min degree decomposition is valid and tight on trees") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = gnp_graph(3 + static_cast<int>(seed % 10), 0.3, seed + 500);
        TreeDecomposition td = min_degree_td(g);
        validate_td(td, g);
    }
    Graph t = random_tree(200, 8);
    TreeDecomposition td = min_degree_td(t);
    validate_td(td, t);
    CHECK(td.width() == 1);

    TreeDecomposition single = min_degree_td(path_graph(1));
    validate_td(single, path_graph(1));
}

TEST_CASE("validate_td catches broken decompositions") {
    Graph p4 = path_graph(4);
    TreeDecomposition td = min_degree_td(p4);

    TreeDecomposition missing_vertex = td;
    for (auto& bag : missing_vertex.bags)
        bag.erase(std::remove(bag.begin(), bag.end(), 3), bag.end());
    CHECK_THROWS_AS(validate_td(missing_vertex, p4), ParseError);

    TreeDecomposition broken_subtree = td;
    broken_subtree.bags.push_back({0});
    broken_subtree.bags.push_back({2, 3});
    broken_subtree.tree_edges.push_back(
        {static_cast<int>(broken_subtree.bags.size()) - 2,
         static_cast<int>(broken_subtree.bags.size()) - 1});
    CHECK_THROWS_AS(validate_td(broken_subtree, p4), ParseError);
}

TEST_CASE("nice form has the promised shape") {
    for (uint64_t seed = 600; seed < 630; ++seed) {
        Graph g = random_connected_graph(4 + static_cast<int>(seed % 9), 0.35, seed);
        TreeDecomposition td = min_degree_td(g);
        NiceTd nice = to_nice(td);
        REQUIRE(nice.root == static_cast<int>(nice.nodes.size()) - 1);
        CHECK(nice.nodes[nice.root].bag.empty());
        for (size_t i = 0; i < nice.nodes.size(); ++i) {
            const NiceNode& node = nice.nodes[i];
            switch (node.kind) {
                case NiceKind::kLeaf:
                    CHECK(node.bag.empty());
                    break;
                case NiceKind::kIntroduce: {
                    REQUIRE(node.left >= 0);
                    REQUIRE(node.left < static_cast<int>(i));
                    const auto& child = nice.nodes[node.left].bag;
                    CHECK(node.bag.size() == child.size() + 1);
                    CHECK(std::binary_search(node.bag.begin(), node.bag.end(),
                                             node.vertex));
                    break;
                }
                case NiceKind::kForget: {
                    const auto& child = nice.nodes[node.left].bag;
                    CHECK(node.bag.size() + 1 == child.size());
                    CHECK(std::binary_search(child.begin(), child.end(), node.vertex));
                    break;
                }
                case NiceKind::kJoin:
                    REQUIRE(node.right >= 0);
                    CHECK(nice.nodes[node.left].bag == node.bag);
                    CHECK(nice.nodes[node.right].bag == node.bag);
                    break;
            }
        }
    }
}

TEST_CASE("td files round-trip") {
    Graph g = random_connected_graph(12, 0.3, 77);
    TreeDecomposition td = min_degree_td(g);
    std::ostringstream out;
    write_td(out, td);
    std::istringstream in(out.str());
    TreeDecomposition back = read_td(in, "mem");
    CHECK(back.bags == td.bags);
    CHECK(back.n == td.n);
    validate_td(back, g);

    std::istringstream dup("s td 2 1 2\nb 1 1\nb 1 2\n1 2\n");
    CHECK_THROWS_AS(read_td(dup, "bad"), ParseError);
}
