#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "dvd/brute.hpp"
#include "dvd/errors.hpp"
#include "dvd/gen.hpp"
#include "dvd/mw.hpp"

using namespace dvd;

namespace {

DvdInstance k22_instance() {
    Graph k22(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    return uniform_instance(k22, 1, 1);
}

}  // namespace

TEST_CASE("threshold-one solver on fixed shapes") {
    Solution star_sol = rd_mw_solve(uniform_instance(star_graph(4), 1, 1));
    CHECK(star_sol.selected.size() == 1);
    CHECK(star_sol.proven_optimal);
    REQUIRE(star_sol.width_used.has_value());

    Solution k22_sol = rd_mw_solve(k22_instance());
    CHECK(k22_sol.selected.size() == 2);

    DvdInstance c6 = uniform_instance(cycle_graph(6), 1, 2);
    Solution c6_sol = rd_mw_solve(c6);
    CHECK(c6_sol.selected == std::vector<int>{0, 1});
    CHECK(is_dvd_set(c6, c6_sol.selected).ok);
}

TEST_CASE("module selection check rejects an uncoverable pick") {
    DvdInstance inst = k22_instance();
    ParseTree pt = compute_modular_parse(inst.graph());
    TopView tv = top_view(pt);
    REQUIRE(tv.modules.size() == 2);
    CHECK(!rd_check(inst, tv, {0}, nullptr));
    std::vector<int> reps;
    CHECK(rd_check(inst, tv, {0, 1}, &reps));
    CHECK(reps.size() == 2);
}

TEST_CASE("radius-one solver on cliques") {
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(vd_mw_solve(uniform_instance(k4, 1, 1)).selected.size() == 1);
    CHECK(vd_mw_solve(uniform_instance(k4, 3, 1)).selected.size() == 3);
}

TEST_CASE("radius-one decision handles exact budgets") {
    DvdInstance k3 = uniform_instance(cycle_graph(3), 2, 1);
    ParseTree pt = compute_modular_parse(k3.graph());
    std::vector<int> witness;
    CHECK(vd_mw_decide(k3, pt, 2, {}, &witness));
    CHECK(witness.size() == 2);
    CHECK(is_dvd_set(k3, witness).ok);
    CHECK(!vd_mw_decide(k3, pt, 1));
}

TEST_CASE("general solver on fixed shapes") {
    DvdInstance c4 = uniform_instance(cycle_graph(4), 2, 2);
    Solution c4_sol = dvd_mw_solve(c4);
    CHECK(c4_sol.selected == std::vector<int>{1, 3});
    CHECK(c4_sol.proven_optimal);

    DvdInstance c6 = uniform_instance(cycle_graph(6), 1, 2);
    CHECK(dvd_mw_solve(c6).selected.size() == 2);

    DvdInstance p3 = uniform_instance(path_graph(3), 1, 1);
    CHECK(dvd_mw_solve(p3).selected == std::vector<int>{1});
}

TEST_CASE("a heavy demand can sit on the selected vertex itself") {
    Graph star = star_graph(3);
    std::vector<int> t{3, 1, 1, 1};
    std::vector<int> d{2, 2, 2, 2};
    DvdInstance inst(star, t, d);
    Solution sol = dvd_mw_solve(inst);
    CHECK(sol.selected.size() == 1);
    CHECK(is_dvd_set(inst, sol.selected).ok);
}

TEST_CASE("width cap turns into a refusal") {
    DvdInstance c5 = uniform_instance(cycle_graph(5), 1, 1);
    MwOptions tight;
    tight.width_cap = 3;
    CHECK_THROWS_AS(rd_mw_solve(c5, tight), RefusalError);
    CHECK_THROWS_AS(vd_mw_solve(c5, tight), RefusalError);
    CHECK_THROWS_AS(dvd_mw_solve(c5, tight), RefusalError);
}

TEST_CASE("memoized and plain decisions agree") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 3 + static_cast<int>(seed % 8);
        Graph g = random_connected_graph(n, 0.4, seed + 40);
        DvdInstance inst = random_demands(g, 2, 1, seed + 11);
        MwOptions memo;
        memo.memo = true;
        CHECK(vd_mw_solve(inst).selected.size() ==
              vd_mw_solve(inst, memo).selected.size());
    }
}

TEST_CASE("threshold-one answers use at most one vertex per top module") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        int n = 4 + static_cast<int>(seed % 10);
        Graph g = random_connected_graph(n, 0.35, seed + 200);
        std::vector<int> t(g.num_vertices(), 1);
        std::vector<int> d(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v)
            d[v] = 1 + static_cast<int>((seed + static_cast<uint64_t>(v)) % 2);
        DvdInstance inst(g, t, d);
        Solution sol = rd_mw_solve(inst);
        ParseTree pt = compute_modular_parse(g);
        TopView tv = top_view(pt);
        std::vector<int> owner(g.num_vertices(), -1);
        for (size_t m = 0; m < tv.modules.size(); ++m)
            for (int v : tv.modules[m]) owner[v] = static_cast<int>(m);
        std::set<int> hit;
        for (int v : sol.selected) CHECK(hit.insert(owner[v]).second);
    }
}

TEST_CASE("solvers match brute force on random instances") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        int n = 3 + static_cast<int>(seed % 9);
        Graph g = random_connected_graph(n, 0.35, seed + 1000);
        DvdInstance inst = random_demands(g, 3, 2, seed * 3 + 2);
        auto best = brute_force_min_dvd(inst);
        REQUIRE(best.has_value());
        Solution sol = dvd_mw_solve(inst);
        CHECK(sol.selected.size() == best->selected.size());
        CHECK(is_dvd_set(inst, sol.selected).ok);

        if (inst.uniform_threshold_one()) {
            CHECK(rd_mw_solve(inst).selected.size() == best->selected.size());
        }
        if (inst.uniform_radius_one()) {
            CHECK(vd_mw_solve(inst).selected.size() == best->selected.size());
        }
    }
}

TEST_CASE("plain domination agrees with brute force") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        int n = 3 + static_cast<int>(seed % 8);
        Graph g = random_connected_graph(n, 0.4, seed + 5000);
        DvdInstance inst = uniform_instance(g, 1, 1);
        auto best = brute_force_min_dvd(inst);
        REQUIRE(best.has_value());
        CHECK(rd_mw_solve(inst).selected.size() == best->selected.size());
        CHECK(vd_mw_solve(inst).selected.size() == best->selected.size());
        CHECK(dvd_mw_solve(inst).selected.size() == best->selected.size());
    }
}
