#include "dvd/reduction.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "dvd/errors.hpp"
#include "dvd/graph.hpp"
#include "dvd/modular.hpp"

namespace dvd {

int MqInstance::num_crossing_edges() const {
    int total = 0;
    for (const auto& es : crossing) total += static_cast<int>(es.size());
    return total;
}

int MqInstance::pair_index(int c, int d) const {
    if (c > d) std::swap(c, d);
    return c * q - c * (c + 3) / 2 + d - 1;
}

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

// Swap edges around until every index on both sides of the pair is
// covered. Only edges whose endpoint has a spare are moved, so repaired
// vertices never lose coverage again; the optional keep edge is pinned.
void repair_coverage(EdgeSet& es, int r, std::optional<std::pair<int, int>> keep) {
    auto mult = [&](int idx, bool left) {
        int m = 0;
        for (const auto& e : es)
            if ((left ? e.first : e.second) == idx) ++m;
        return m;
    };
    for (int side = 0; side < 2; ++side) {
        bool left = side == 0;
        for (int i = 0; i <= r; ++i) {
            if (mult(i, left) > 0) continue;
            std::vector<std::pair<int, int>> pool(es.begin(), es.end());
            bool done = false;
            for (auto it = pool.rbegin(); it != pool.rend(); ++it) {
                if (keep && *it == *keep) continue;
                if (mult(left ? it->first : it->second, left) < 2) continue;
                std::pair<int, int> moved =
                    left ? std::pair(i, it->second) : std::pair(it->first, i);
                if (es.count(moved)) continue;
                es.erase(*it);
                es.insert(moved);
                done = true;
                break;
            }
            if (!done) throw SelfCheckError("crossing edge repair failed");
        }
    }
}

}  // namespace

MqInstance mq_random_instance(int q, int r, int s, uint64_t seed, bool planted) {
    if (q < 2) throw ParseError("need at least two colors");
    if (r < 1 || s < 1) throw ParseError("need r >= 1 and s >= 1");
    int distinct = (r + 1) * (r + 1);
    if (s + 1 > distinct)
        throw ParseError("classes of " + std::to_string(r + 1) +
                         " vertices cannot carry " + std::to_string(s + 1) +
                         " distinct crossing edges");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, r);
    std::vector<int> chosen(q, 0);
    if (planted)
        for (int c = 0; c < q; ++c) chosen[c] = pick(rng);

    MqInstance mq;
    mq.q = q;
    mq.r = r;
    mq.s = s;
    for (int c = 0; c < q; ++c) {
        for (int d = c + 1; d < q; ++d) {
            EdgeSet es;
            std::optional<std::pair<int, int>> keep;
            if (planted) {
                keep = std::pair(chosen[c], chosen[d]);
                es.insert(*keep);
            }
            int tries = 0;
            while (static_cast<int>(es.size()) < s + 1) {
                if (++tries > 64 * distinct) {
                    for (int i = 0; i <= r && static_cast<int>(es.size()) < s + 1; ++i)
                        for (int j = 0; j <= r && static_cast<int>(es.size()) < s + 1; ++j)
                            es.insert({i, j});
                    break;
                }
                es.insert({pick(rng), pick(rng)});
            }
            // with fewer edges than vertices per class, full coverage
            // is unsatisfiable and is skipped
            if (s >= r) repair_coverage(es, r, keep);
            mq.crossing.emplace_back(es.begin(), es.end());
        }
    }
    return mq;
}

bool mq_has_multicolored_clique(const MqInstance& mq) {
    std::vector<int> tuple(mq.q, 0);
    while (true) {
        bool all = true;
        for (int c = 0; c < mq.q && all; ++c) {
            for (int d = c + 1; d < mq.q && all; ++d) {
                const auto& es = mq.crossing[mq.pair_index(c, d)];
                if (!std::binary_search(es.begin(), es.end(),
                                        std::pair(tuple[c], tuple[d])))
                    all = false;
            }
        }
        if (all) return true;
        int c = 0;
        while (c < mq.q && tuple[c] == mq.r) tuple[c++] = 0;
        if (c == mq.q) return false;
        ++tuple[c];
    }
}

namespace {

struct PartSpec {
    std::string name;
    bool clique = false;
    bool guard = false;
    std::vector<int> demands;
};

// Canonical part list: selection gadgets by color, then the multiple
// gadget of every color pair, then the two incidence gadgets per pair.
std::vector<PartSpec> layout(const MqInstance& mq) {
    int q = mq.q, r = mq.r, s = mq.s;
    std::vector<PartSpec> specs;
    auto uniform = [](int count, int demand) { return std::vector<int>(count, demand); };
    for (int c = 0; c < q; ++c) {
        std::string base = "sel" + std::to_string(c);
        specs.push_back({base + "-pos", true, false, uniform(r, r)});
        specs.push_back({base + "-neg", true, false, uniform(r, r)});
        specs.push_back({base + "-guard", false, true, uniform(r + 1, r)});
    }
    for (int c = 0; c < q; ++c) {
        for (int d = c + 1; d < q; ++d) {
            std::string base = "mul" + std::to_string(c) + ":" + std::to_string(d);
            std::vector<int> stepped(s);
            for (int j = 1; j <= s; ++j) stepped[j - 1] = 2 * r * j;
            specs.push_back({base + "-cnt-pos", true, false, uniform(2 * r * s, 2 * r * s)});
            specs.push_back({base + "-cnt-neg", true, false, uniform(2 * r * s, 2 * r * s)});
            specs.push_back({base + "-cnt-guard", false, true, uniform(2 * r * s + 1, 2 * r * s)});
            specs.push_back({base + "-edge-pos", false, false, stepped});
            specs.push_back({base + "-edge-neg", false, false, stepped});
            specs.push_back({base + "-edge-guard", false, true, uniform(s + 1, s)});
        }
    }
    for (int c = 0; c < q; ++c) {
        for (int d = c + 1; d < q; ++d) {
            const auto& es = mq.crossing[mq.pair_index(c, d)];
            for (int side = 0; side < 2; ++side) {
                int own = side == 0 ? c : d;
                std::string base = "inc" + std::to_string(own) + ":" +
                                   std::to_string(c) + std::to_string(d);
                std::vector<int> pos(s + 1), neg(s + 1);
                for (int j = 0; j <= s; ++j) {
                    int i = side == 0 ? es[j].first : es[j].second;
                    pos[j] = 2 * r * j + i;
                    neg[j] = 2 * r * (s - j) + r - i;
                }
                specs.push_back({base + "-pos", false, false, std::move(pos)});
                specs.push_back({base + "-neg", false, false, std::move(neg)});
                specs.push_back({base + "-guard", false, true, uniform(s + 1, s)});
            }
        }
    }
    return specs;
}

// Complete-bipartite links between parts, as (index, index) pairs into
// the canonical part list.
std::vector<std::pair<int, int>> links(const MqInstance& mq) {
    int q = mq.q;
    int pairs = q * (q - 1) / 2;
    auto sel = [&](int c) { return 3 * c; };
    auto mul = [&](int p) { return 3 * q + 6 * p; };
    auto inc = [&](int p, int side) { return 3 * q + 6 * pairs + 6 * p + 3 * side; };

    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < q; ++c) {
        int pos = sel(c), neg = pos + 1, guard = pos + 2;
        out.push_back({pos, neg});
        out.push_back({guard, pos});
        out.push_back({guard, neg});
    }
    for (int p = 0; p < pairs; ++p) {
        int cpos = mul(p), cneg = cpos + 1, cguard = cpos + 2;
        int epos = cpos + 3, eneg = cpos + 4, eguard = cpos + 5;
        out.push_back({cguard, cpos});
        out.push_back({cguard, cneg});
        out.push_back({cpos, cneg});
        out.push_back({epos, cpos});
        out.push_back({eneg, cneg});
        out.push_back({eguard, epos});
        out.push_back({eguard, eneg});
    }
    int p = 0;
    for (int c = 0; c < q; ++c) {
        for (int d = c + 1; d < q; ++d, ++p) {
            for (int side = 0; side < 2; ++side) {
                int own = side == 0 ? c : d;
                int ipos = inc(p, side), ineg = ipos + 1, iguard = ipos + 2;
                out.push_back({iguard, ipos});
                out.push_back({iguard, ineg});
                out.push_back({ipos, sel(own)});
                out.push_back({ipos, mul(p)});
                out.push_back({ineg, sel(own) + 1});
                out.push_back({ineg, mul(p) + 1});
            }
        }
    }
    return out;
}

}  // namespace

VdReduction mq_to_vd(const MqInstance& mq) {
    std::vector<PartSpec> specs = layout(mq);
    std::vector<GadgetPart> parts;
    std::vector<int> part_of;
    std::vector<int> t;
    int n = 0;
    for (const auto& spec : specs) {
        int size = static_cast<int>(spec.demands.size());
        parts.push_back({spec.name, spec.clique, spec.guard, n, n + size});
        for (int i = 0; i < size; ++i) {
            part_of.push_back(static_cast<int>(parts.size()) - 1);
            t.push_back(spec.demands[i]);
        }
        n += size;
    }

    std::vector<std::pair<int, int>> edges;
    for (size_t p = 0; p < parts.size(); ++p) {
        if (!parts[p].clique) continue;
        for (int u = parts[p].begin; u < parts[p].end; ++u)
            for (int v = u + 1; v < parts[p].end; ++v) edges.push_back({u, v});
    }
    for (auto [a, b] : links(mq)) {
        for (int u = parts[a].begin; u < parts[a].end; ++u)
            for (int v = parts[b].begin; v < parts[b].end; ++v)
                edges.push_back({std::min(u, v), std::max(u, v)});
    }

    int q = mq.q, r = mq.r, s = mq.s;
    VdReduction red{
        DvdInstance(Graph(n, std::move(edges)), std::move(t), std::vector<int>(n, 1)),
        q * r + q * (q - 1) / 2 * (2 * r + 3) * s,
        std::move(parts),
        std::move(part_of)};
    red.q = q;
    red.r = r;
    red.s = s;
    red.source = mq;
    return red;
}

AuditReport gadget_audit(const VdReduction& red) {
    AuditReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.failures.push_back(msg);
    };

    MqInstance mq = red.source;
    if (mq.q != red.q || mq.r != red.r || mq.s != red.s) {
        fail("stored parameters disagree with the source instance");
        return report;
    }
    std::vector<PartSpec> specs = layout(mq);
    if (red.parts.size() != specs.size()) {
        fail("expected " + std::to_string(specs.size()) + " parts, found " +
             std::to_string(red.parts.size()));
        return report;
    }

    const Graph& g = red.instance.graph();
    int n = 0;
    for (size_t p = 0; p < specs.size(); ++p) {
        const GadgetPart& part = red.parts[p];
        const PartSpec& spec = specs[p];
        if (part.name != spec.name)
            fail("part " + std::to_string(p) + ": expected name " + spec.name +
                 ", found " + part.name);
        if (part.size() != static_cast<int>(spec.demands.size()))
            fail(spec.name + ": expected " + std::to_string(spec.demands.size()) +
                 " vertices, found " + std::to_string(part.size()));
        if (part.begin != n) fail(spec.name + ": parts are not laid out contiguously");
        if (part.clique != spec.clique || part.guard != spec.guard)
            fail(spec.name + ": part kind flags are wrong");
        n = part.end;
    }
    if (!report.ok) return report;
    if (n != g.num_vertices()) {
        fail("parts cover " + std::to_string(n) + " vertices, graph has " +
             std::to_string(g.num_vertices()));
        return report;
    }

    for (int v = 0; v < n; ++v) {
        if (red.part_of[v] < 0 || red.part_of[v] >= static_cast<int>(red.parts.size()) ||
            red.parts[red.part_of[v]].begin > v || red.parts[red.part_of[v]].end <= v) {
            fail("vertex " + std::to_string(v + 1) + " has a wrong part id");
            return report;
        }
    }

    for (size_t p = 0; p < specs.size(); ++p) {
        const GadgetPart& part = red.parts[p];
        for (int u = part.begin; u < part.end; ++u) {
            int demand = specs[p].demands[u - part.begin];
            if (red.instance.t(u) != demand)
                fail(part.name + ": vertex " + std::to_string(u + 1) +
                     " should demand " + std::to_string(demand) + ", demands " +
                     std::to_string(red.instance.t(u)));
            if (red.instance.d(u) != 1)
                fail(part.name + ": vertex " + std::to_string(u + 1) +
                     " should have radius 1");
        }
    }

    // demand distinctness inside incidence pos/neg parts
    for (size_t p = 0; p < specs.size(); ++p) {
        if (specs[p].name.compare(0, 3, "inc") != 0 || specs[p].guard) continue;
        std::vector<int> ds = specs[p].demands;
        std::sort(ds.begin(), ds.end());
        if (std::adjacent_find(ds.begin(), ds.end()) != ds.end())
            fail(specs[p].name + ": incidence demands are not pairwise distinct");
    }

    std::vector<std::vector<char>> want(specs.size(),
                                        std::vector<char>(specs.size(), 0));
    for (auto [a, b] : links(mq)) want[a][b] = want[b][a] = 1;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int pu = red.part_of[u], pv = red.part_of[v];
            bool expected = pu == pv ? red.parts[pu].clique : want[pu][pv] != 0;
            if (g.has_edge(u, v) == expected) continue;
            std::string rule =
                pu == pv ? (red.parts[pu].clique ? "clique part is incomplete"
                                                 : "bag part is not independent")
                         : (expected ? "required link is missing" : "parts must not touch");
            fail(red.parts[pu].name + " / " + red.parts[pv].name + ": " + rule +
                 " at vertices " + std::to_string(u + 1) + "," + std::to_string(v + 1));
            if (report.failures.size() > 50) return report;
        }
    }

    int expected_budget = mq.q * mq.r + mq.q * (mq.q - 1) / 2 * (2 * mq.r + 3) * mq.s;
    if (red.budget != expected_budget)
        fail("budget should be " + std::to_string(expected_budget) + ", is " +
             std::to_string(red.budget));

    int expected_nd = 3 * mq.q + 12 * (mq.q * (mq.q - 1) / 2);
    int nd = neighborhood_diversity(g);
    if (nd != expected_nd)
        fail("type partition has " + std::to_string(nd) + " classes, expected " +
             std::to_string(expected_nd));

    return report;
}

namespace {

struct CountSearch {
    const VdReduction& red;
    int budget;
    std::vector<std::vector<int>> padj;
    std::vector<std::vector<int>> sorted_demands;
    struct Group {
        int guard;
        std::vector<int> members;
        int min_total;
    };
    std::vector<Group> groups;
    std::vector<int> suffix_min;
    std::vector<int> counts;

    explicit CountSearch(const VdReduction& red_, int budget_)
        : red(red_), budget(budget_) {
        size_t np = red.parts.size();
        padj.resize(np);
        sorted_demands.resize(np);
        const Graph& g = red.instance.graph();
        std::vector<std::vector<char>> touch(np, std::vector<char>(np, 0));
        for (int u = 0; u < g.num_vertices(); ++u)
            for (int v : g.neighbors(u))
                touch[red.part_of[u]][red.part_of[v]] = 1;
        for (size_t a = 0; a < np; ++a) {
            for (size_t b = 0; b < np; ++b)
                if (a != b && touch[a][b]) padj[a].push_back(static_cast<int>(b));
            const GadgetPart& part = red.parts[a];
            for (int v = part.begin; v < part.end; ++v)
                sorted_demands[a].push_back(red.instance.t(v));
            std::sort(sorted_demands[a].begin(), sorted_demands[a].end());
        }

        std::vector<char> grouped(np, 0);
        for (size_t p = 0; p < np; ++p) {
            if (!red.parts[p].guard) continue;
            Group grp{static_cast<int>(p), {}, sorted_demands[p].back()};
            for (int b : padj[p]) {
                if (red.parts[b].guard || grouped[b])
                    throw SelfCheckError("guard neighborhoods do not partition the parts");
                grouped[b] = 1;
                grp.members.push_back(b);
            }
            groups.push_back(std::move(grp));
        }
        for (size_t p = 0; p < np; ++p)
            if (!red.parts[p].guard && !grouped[p])
                groups.push_back({-1, {static_cast<int>(p)}, 0});

        suffix_min.assign(groups.size() + 1, 0);
        for (size_t i = groups.size(); i-- > 0;)
            suffix_min[i] = suffix_min[i + 1] + groups[i].min_total;
        counts.assign(np, 0);
    }

    bool feasible() const {
        for (size_t p = 0; p < red.parts.size(); ++p) {
            const GadgetPart& part = red.parts[p];
            if (counts[p] >= part.size()) continue;
            int need = sorted_demands[p][part.size() - 1 - counts[p]];
            int cov = part.clique ? counts[p] : 0;
            for (int b : padj[p]) cov += counts[b];
            if (cov < need) return false;
        }
        return true;
    }

    bool distribute(const Group& grp, size_t mi, int left, size_t gi, int used) {
        if (mi + 1 == grp.members.size()) {
            int p = grp.members[mi];
            if (left > red.parts[p].size()) return false;
            counts[p] = left;
            if (descend(gi + 1, used)) return true;
            counts[p] = 0;
            return false;
        }
        int p = grp.members[mi];
        int cap = std::min(left, red.parts[p].size());
        for (int take = 0; take <= cap; ++take) {
            counts[p] = take;
            if (distribute(grp, mi + 1, left - take, gi, used)) return true;
        }
        counts[p] = 0;
        return false;
    }

    bool descend(size_t gi, int used) {
        if (gi == groups.size()) return feasible();
        if (used + suffix_min[gi] > budget) return false;
        const Group& grp = groups[gi];
        int room = budget - used - suffix_min[gi + 1];
        for (int total = grp.min_total; total <= room; ++total)
            if (distribute(grp, 0, total, gi, used + total)) return true;
        return false;
    }

    std::vector<int> materialize() const {
        std::vector<int> out;
        for (size_t p = 0; p < red.parts.size(); ++p) {
            const GadgetPart& part = red.parts[p];
            std::vector<int> ids(part.size());
            for (int v = part.begin; v < part.end; ++v) ids[v - part.begin] = v;
            std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
                return red.instance.t(a) > red.instance.t(b);
            });
            for (int i = 0; i < counts[p]; ++i) out.push_back(ids[i]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

}  // namespace

std::optional<std::vector<int>> pooled_count_decide(const VdReduction& red, int budget) {
    CountSearch search(red, budget);
    if (!search.descend(0, 0)) return std::nullopt;
    return search.materialize();
}

}  // namespace dvd
