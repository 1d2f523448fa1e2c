#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "dvd/errors.hpp"
#include "dvd/modular.hpp"
#include "dvd/reduction.hpp"

using namespace dvd;

namespace {

int choose2(int q) { return q * (q - 1) / 2; }

int expected_budget(int q, int r, int s) {
    return q * r + choose2(q) * (2 * r + 3) * s;
}

int expected_vertices(int q, int r, int s) {
    return q * (3 * r + 1) + choose2(q) * (6 * r * s + 3 * s + 2) +
           6 * choose2(q) * (s + 1);
}

// Three colors, two vertices each, no multicolored clique: the first two
// pairs force equal indices while the third pair only joins unequal ones.
MqInstance stubborn_instance() {
    MqInstance mq;
    mq.q = 3;
    mq.r = 1;
    mq.s = 1;
    mq.crossing = {{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
    return mq;
}

}  // namespace

TEST_CASE("pair indexing walks color pairs in order") {
    MqInstance mq;
    mq.q = 4;
    CHECK(mq.pair_index(0, 1) == 0);
    CHECK(mq.pair_index(0, 2) == 1);
    CHECK(mq.pair_index(0, 3) == 2);
    CHECK(mq.pair_index(1, 2) == 3);
    CHECK(mq.pair_index(2, 3) == 5);
}

TEST_CASE("random instances have the right shape") {
    MqInstance small = mq_random_instance(2, 1, 1, 3);
    CHECK(small.num_vertices() == 4);
    CHECK(small.num_crossing_edges() == 2);

    MqInstance mid = mq_random_instance(3, 1, 1, 3);
    CHECK(mid.num_vertices() == 6);
    CHECK(mid.num_crossing_edges() == 6);

    for (uint64_t seed = 0; seed < 10; ++seed) {
        MqInstance mq = mq_random_instance(3, 2, 2, seed);
        for (const auto& pair_edges : mq.crossing) {
            REQUIRE(pair_edges.size() == 3u);
            CHECK(std::is_sorted(pair_edges.begin(), pair_edges.end()));
            CHECK(std::adjacent_find(pair_edges.begin(), pair_edges.end()) ==
                  pair_edges.end());
        }
    }
}

TEST_CASE("equal seeds give equal instances") {
    MqInstance a = mq_random_instance(3, 2, 2, 41);
    MqInstance b = mq_random_instance(3, 2, 2, 41);
    CHECK(a.crossing == b.crossing);
    MqInstance c = mq_random_instance(3, 2, 2, 42);
    CHECK(a.crossing != c.crossing);
}

TEST_CASE("every vertex keeps cross-class neighbors when edges suffice") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        MqInstance mq = mq_random_instance(3, 2, 2, seed + 100);
        for (int c = 0; c < mq.q; ++c)
            for (int d = 0; d < mq.q; ++d) {
                if (c == d) continue;
                int lo = std::min(c, d), hi = std::max(c, d);
                const auto& es = mq.crossing[mq.pair_index(lo, hi)];
                for (int i = 0; i <= mq.r; ++i) {
                    bool covered = false;
                    for (const auto& e : es) {
                        int own = (c == lo) ? e.first : e.second;
                        if (own == i) covered = true;
                    }
                    CHECK(covered);
                }
            }
    }
}

TEST_CASE("impossible parameters are rejected") {
    CHECK_THROWS_AS(mq_random_instance(1, 1, 1, 0), ParseError);
    CHECK_THROWS_AS(mq_random_instance(2, 0, 1, 0), ParseError);
    CHECK_THROWS_AS(mq_random_instance(2, 1, 0, 0), ParseError);
    CHECK_THROWS_AS(mq_random_instance(2, 1, 4, 0), ParseError);
}

TEST_CASE("planted instances really contain a clique") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        MqInstance mq = mq_random_instance(3, 2, 2, seed, true);
        CHECK(mq_has_multicolored_clique(mq));
    }
    CHECK(!mq_has_multicolored_clique(stubborn_instance()));
}

TEST_CASE("gadget totals at the two smallest scales") {
    VdReduction small = mq_to_vd(mq_random_instance(2, 1, 1, 9));
    CHECK(small.budget == 7);
    CHECK(small.instance.num_vertices() == 31);
    CHECK(neighborhood_diversity(small.instance.graph()) == 18);

    VdReduction mid = mq_to_vd(mq_random_instance(3, 1, 1, 9));
    CHECK(mid.budget == 18);
    CHECK(mid.instance.num_vertices() == 81);
    CHECK(neighborhood_diversity(mid.instance.graph()) == 45);
    CHECK(mid.instance.uniform_radius_one());
}

TEST_CASE("gadget totals follow the general formulas") {
    for (auto [q, r, s] : {std::tuple<int, int, int>{3, 2, 1}, {2, 1, 2}, {4, 1, 1}}) {
        VdReduction red = mq_to_vd(mq_random_instance(q, r, s, 17));
        CHECK(red.budget == expected_budget(q, r, s));
        CHECK(red.instance.num_vertices() == expected_vertices(q, r, s));
    }
}

TEST_CASE("part map tiles the vertex range") {
    VdReduction red = mq_to_vd(mq_random_instance(3, 1, 1, 2));
    int expected_begin = 0;
    for (const auto& part : red.parts) {
        CHECK(part.begin == expected_begin);
        CHECK(part.size() > 0);
        expected_begin = part.end;
    }
    CHECK(expected_begin == red.instance.num_vertices());
    for (int v = 0; v < red.instance.num_vertices(); ++v) {
        const GadgetPart& p = red.part(v);
        CHECK(p.begin <= v);
        CHECK(v < p.end);
    }
}

TEST_CASE("the audit passes fresh builds") {
    for (auto [q, r, s] : {std::tuple<int, int, int>{2, 1, 1}, {3, 1, 1}, {3, 2, 2}}) {
        VdReduction red = mq_to_vd(mq_random_instance(q, r, s, 23));
        AuditReport report = gadget_audit(red);
        CHECK(report.ok);
        CHECK(report.failures.empty());
    }
}

TEST_CASE("the audit notices tampering") {
    VdReduction red = mq_to_vd(mq_random_instance(2, 1, 1, 31));

    VdReduction wrong_budget = red;
    wrong_budget.budget += 1;
    AuditReport report = gadget_audit(wrong_budget);
    CHECK(!report.ok);
    REQUIRE(!report.failures.empty());

    VdReduction wrong_flag = red;
    wrong_flag.parts[0].clique = !wrong_flag.parts[0].clique;
    CHECK(!gadget_audit(wrong_flag).ok);
}

TEST_CASE("decision oracle accepts planted instances at the exact budget") {
    VdReduction red = mq_to_vd(mq_random_instance(2, 1, 1, 5, true));
    auto witness = pooled_count_decide(red, red.budget);
    REQUIRE(witness.has_value());
    CHECK(static_cast<int>(witness->size()) == red.budget);
    CHECK(is_dvd_set(red.instance, *witness).ok);
    for (int v : *witness) CHECK(!red.part(v).guard);

    CHECK(!pooled_count_decide(red, red.budget - 1).has_value());

    VdReduction mid = mq_to_vd(mq_random_instance(3, 1, 1, 5, true));
    auto mid_witness = pooled_count_decide(mid, mid.budget);
    REQUIRE(mid_witness.has_value());
    CHECK(is_dvd_set(mid.instance, *mid_witness).ok);
}

TEST_CASE("decision oracle rejects a clique-free instance") {
    VdReduction red = mq_to_vd(stubborn_instance());
    AuditReport report = gadget_audit(red);
    REQUIRE(report.ok);
    CHECK(!pooled_count_decide(red, red.budget).has_value());
}

TEST_CASE("oracle and clique search agree on small random instances") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        MqInstance mq = mq_random_instance(2, 1, 1, seed * 7 + 1);
        VdReduction red = mq_to_vd(mq);
        bool clique = mq_has_multicolored_clique(mq);
        bool accepted = pooled_count_decide(red, red.budget).has_value();
        CHECK(clique == accepted);
    }
}
