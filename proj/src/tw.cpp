#include "dvd/tw.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "dvd/errors.hpp"

namespace dvd {

namespace {

constexpr int kInf = INT_MAX / 4;
constexpr uint64_t kTableCap = uint64_t(1) << 24;

uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

uint64_t sat_pow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

struct Radix {
    std::vector<int> radix;
    std::vector<uint64_t> stride;
    uint64_t prod = 1;

    void init(const std::vector<int>& r) {
        radix = r;
        stride.assign(r.size(), 1);
        prod = 1;
        for (size_t i = 0; i < r.size(); ++i) {
            stride[i] = prod;
            prod = sat_mul(prod, static_cast<uint64_t>(r[i]));
        }
    }
    void decode(uint64_t idx, std::vector<int>& out) const {
        out.resize(radix.size());
        for (size_t i = 0; i < radix.size(); ++i) {
            out[i] = static_cast<int>(idx % radix[i]);
            idx /= radix[i];
        }
    }
    uint64_t encode(const std::vector<int>& coords) const {
        uint64_t idx = 0;
        for (size_t i = 0; i < coords.size(); ++i) idx += coords[i] * stride[i];
        return idx;
    }
};

uint64_t insert_bit(uint64_t mask, int pos, int bit) {
    uint64_t high = (mask >> pos) << (pos + 1);
    uint64_t low = mask & ((uint64_t(1) << pos) - 1);
    return high | low | (uint64_t(bit) << pos);
}

uint64_t remove_bit(uint64_t mask, int pos) {
    uint64_t high = (mask >> (pos + 1)) << pos;
    uint64_t low = mask & ((uint64_t(1) << pos) - 1);
    return high | low;
}

int bag_position(const std::vector<int>& bag, int v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// ---------------------------------------------------------------------
// Threshold DP (radius one). State per bag: selection mask L plus, for
// every unselected bag vertex, how many selected neighbors the current
// subtree must already provide (0..t_v). Entries where a selected
// vertex carries a nonzero requirement are dead.

struct VdSolver {
    const DvdInstance& inst;
    const NiceTd& nice;
    std::vector<Radix> kr;
    std::vector<std::vector<int>> tab;
    std::vector<std::vector<uint32_t>> jarg;
    std::vector<std::vector<uint8_t>> fsel;
    std::vector<char> picked;

    VdSolver(const DvdInstance& inst_, const NiceTd& nice_)
        : inst(inst_), nice(nice_) {
        size_t nn = nice.nodes.size();
        kr.resize(nn);
        tab.resize(nn);
        jarg.resize(nn);
        fsel.resize(nn);
        picked.assign(inst.num_vertices(), 0);
    }

    bool canonical(uint64_t L, const std::vector<int>& K) const {
        for (size_t q = 0; q < K.size(); ++q)
            if (((L >> q) & 1) && K[q] != 0) return false;
        return true;
    }

    // Child entry fed by an introduce node, given the parent state.
    uint64_t introduce_child_entry(int i, uint64_t L, const std::vector<int>& K,
                                   uint32_t adjm, int pos) const {
        const NiceNode& nd = nice.nodes[i];
        int b = static_cast<int>(nd.bag.size());
        bool vsel = (L >> pos) & 1;
        uint64_t lc = remove_bit(L, pos);
        std::vector<int> ck;
        ck.reserve(b - 1);
        for (int q = 0; q < b; ++q) {
            if (q == pos) continue;
            int val = K[q];
            if (vsel && ((adjm >> q) & 1)) val = std::max(0, val - 1);
            ck.push_back(val);
        }
        return lc * kr[nd.left].prod + kr[nd.left].encode(ck);
    }

    uint64_t forget_child_entry(int i, uint64_t L, const std::vector<int>& K,
                                int cpos, bool selected) const {
        const NiceNode& nd = nice.nodes[i];
        uint64_t lc = insert_bit(L, cpos, selected ? 1 : 0);
        std::vector<int> ck(K.begin(), K.end());
        ck.insert(ck.begin() + cpos, selected ? 0 : inst.t(nd.vertex));
        return lc * kr[nd.left].prod + kr[nd.left].encode(ck);
    }

    // Minimal requirement on the second join child so the combination
    // guarantees K, given the first child holds K1. req never exceeds
    // the vertex threshold because max(K1, bc) >= bc.
    bool join_k2(const std::vector<int>& bag, uint64_t L, const std::vector<int>& K,
                 const std::vector<int>& K1, const std::vector<int>& bc,
                 std::vector<int>& K2) const {
        int b = static_cast<int>(bag.size());
        K2.resize(b);
        for (int q = 0; q < b; ++q) {
            if ((L >> q) & 1) {
                K2[q] = 0;
                continue;
            }
            int req = K[q] + bc[q] - std::max(K1[q], bc[q]);
            K2[q] = req <= bc[q] ? 0 : req;
            if (K2[q] > inst.t(bag[q])) return false;
        }
        return true;
    }

    void compute(int i) {
        const NiceNode& nd = nice.nodes[i];
        const Graph& g = inst.graph();
        int b = static_cast<int>(nd.bag.size());
        uint64_t kprod = kr[i].prod;
        uint64_t total = (uint64_t(1) << b) * kprod;
        tab[i].assign(total, kInf);
        std::vector<int> K, K1, K2;

        switch (nd.kind) {
            case NiceKind::kLeaf:
                tab[i][0] = 0;
                break;
            case NiceKind::kIntroduce: {
                int c = nd.left;
                int v = nd.vertex;
                int pos = bag_position(nd.bag, v);
                uint32_t adjm = 0;
                for (int q = 0; q < b; ++q)
                    if (q != pos && g.has_edge(nd.bag[q], v)) adjm |= uint32_t(1) << q;
                for (uint64_t L = 0; L < (uint64_t(1) << b); ++L) {
                    bool vsel = (L >> pos) & 1;
                    int bagcov = std::popcount(L & uint64_t(adjm));
                    for (uint64_t kidx = 0; kidx < kprod; ++kidx) {
                        kr[i].decode(kidx, K);
                        if (!canonical(L, K)) continue;
                        if (!vsel && K[pos] > bagcov) continue;
                        uint64_t ce = introduce_child_entry(i, L, K, adjm, pos);
                        int cc = tab[c][ce];
                        if (cc >= kInf) continue;
                        tab[i][L * kprod + kidx] = cc + (vsel ? 1 : 0);
                    }
                }
                break;
            }
            case NiceKind::kForget: {
                int c = nd.left;
                int cpos = bag_position(nd.bag, nd.vertex);
                fsel[i].assign(total, 0);
                for (uint64_t L = 0; L < (uint64_t(1) << b); ++L) {
                    for (uint64_t kidx = 0; kidx < kprod; ++kidx) {
                        kr[i].decode(kidx, K);
                        if (!canonical(L, K)) continue;
                        int csel = tab[c][forget_child_entry(i, L, K, cpos, true)];
                        int cun = tab[c][forget_child_entry(i, L, K, cpos, false)];
                        uint64_t e = L * kprod + kidx;
                        if (csel <= cun) {
                            tab[i][e] = csel;
                            fsel[i][e] = 1;
                        } else {
                            tab[i][e] = cun;
                        }
                    }
                }
                break;
            }
            case NiceKind::kJoin: {
                int c1 = nd.left, c2 = nd.right;
                jarg[i].assign(total, 0);
                std::vector<uint32_t> adjq(b, 0);
                for (int q = 0; q < b; ++q)
                    for (int p = 0; p < b; ++p)
                        if (p != q && g.has_edge(nd.bag[q], nd.bag[p]))
                            adjq[q] |= uint32_t(1) << p;
                std::vector<int> bc(b);
                for (uint64_t L = 0; L < (uint64_t(1) << b); ++L) {
                    for (int q = 0; q < b; ++q) bc[q] = std::popcount(L & uint64_t(adjq[q]));
                    int lsize = std::popcount(L);
                    for (uint64_t kidx = 0; kidx < kprod; ++kidx) {
                        kr[i].decode(kidx, K);
                        if (!canonical(L, K)) continue;
                        int best = kInf;
                        uint32_t barg = 0;
                        for (uint64_t k1 = 0; k1 < kprod; ++k1) {
                            int cost1 = tab[c1][L * kprod + k1];
                            if (cost1 >= kInf) continue;
                            kr[i].decode(k1, K1);
                            if (!join_k2(nd.bag, L, K, K1, bc, K2)) continue;
                            int cost2 = tab[c2][L * kprod + kr[i].encode(K2)];
                            if (cost2 >= kInf) continue;
                            int cand = cost1 + cost2 - lsize;
                            if (cand < best) {
                                best = cand;
                                barg = static_cast<uint32_t>(k1);
                            }
                        }
                        if (best < kInf) {
                            uint64_t e = L * kprod + kidx;
                            tab[i][e] = best;
                            jarg[i][e] = barg;
                        }
                    }
                }
                break;
            }
        }
    }

    void walk(int root, uint64_t root_entry) {
        std::vector<std::pair<int, uint64_t>> pending;
        pending.emplace_back(root, root_entry);
        std::vector<int> K, K1, K2;
        while (!pending.empty()) {
            auto [i, entry] = pending.back();
            pending.pop_back();
            const NiceNode& nd = nice.nodes[i];
            int b = static_cast<int>(nd.bag.size());
            uint64_t kprod = kr[i].prod;
            uint64_t L = entry / kprod;
            kr[i].decode(entry % kprod, K);
            switch (nd.kind) {
                case NiceKind::kLeaf:
                    break;
                case NiceKind::kIntroduce: {
                    int v = nd.vertex;
                    int pos = bag_position(nd.bag, v);
                    uint32_t adjm = 0;
                    for (int q = 0; q < b; ++q)
                        if (q != pos && inst.graph().has_edge(nd.bag[q], v))
                            adjm |= uint32_t(1) << q;
                    if ((L >> pos) & 1) picked[v] = 1;
                    pending.emplace_back(nd.left, introduce_child_entry(i, L, K, adjm, pos));
                    break;
                }
                case NiceKind::kForget: {
                    int cpos = bag_position(nd.bag, nd.vertex);
                    pending.emplace_back(
                        nd.left, forget_child_entry(i, L, K, cpos, fsel[i][entry] != 0));
                    break;
                }
                case NiceKind::kJoin: {
                    std::vector<uint32_t> adjq(b, 0);
                    for (int q = 0; q < b; ++q)
                        for (int p = 0; p < b; ++p)
                            if (p != q && inst.graph().has_edge(nd.bag[q], nd.bag[p]))
                                adjq[q] |= uint32_t(1) << p;
                    std::vector<int> bc(b);
                    for (int q = 0; q < b; ++q) bc[q] = std::popcount(L & uint64_t(adjq[q]));
                    uint64_t k1 = jarg[i][entry];
                    kr[i].decode(k1, K1);
                    join_k2(nd.bag, L, K, K1, bc, K2);
                    pending.emplace_back(nd.left, L * kprod + k1);
                    pending.emplace_back(nd.right, L * kprod + kr[i].encode(K2));
                    break;
                }
            }
        }
    }
};

// ---------------------------------------------------------------------
// Radius DP (threshold one). State per bag vertex: a label 0..d_v for
// the distance to the nearest selected vertex along a witness chain,
// with labels above zero flagged realized (the chain's next vertex is
// already processed) or pending (it is yet to come). Encoding per
// coordinate: 0 selected, 2j-1 realized j, 2j pending j.

int state_mag(int s) { return (s + 1) / 2; }
bool state_realized(int s) { return s == 0 || (s % 2) == 1; }
int make_state(int mag, bool realized) {
    return mag == 0 ? 0 : (realized ? 2 * mag - 1 : 2 * mag);
}

struct RdSolver {
    const DvdInstance& inst;
    const NiceTd& nice;
    std::vector<Radix> kr;
    std::vector<std::vector<int>> tab;
    struct Back {
        uint32_t a = 0;
        uint32_t b = 0;
        uint8_t aux = 0;
    };
    std::vector<std::vector<Back>> back;
    std::vector<char> picked;

    RdSolver(const DvdInstance& inst_, const NiceTd& nice_) : inst(inst_), nice(nice_) {
        size_t nn = nice.nodes.size();
        kr.resize(nn);
        tab.resize(nn);
        back.resize(nn);
        picked.assign(inst.num_vertices(), 0);
    }

    void compute(int i) {
        const NiceNode& nd = nice.nodes[i];
        const Graph& g = inst.graph();
        uint64_t total = kr[i].prod;
        tab[i].assign(total, kInf);
        back[i].assign(total, {});
        std::vector<int> cs, ps;

        switch (nd.kind) {
            case NiceKind::kLeaf:
                tab[i][0] = 0;
                break;
            case NiceKind::kIntroduce: {
                int c = nd.left;
                int v = nd.vertex;
                int pos = bag_position(nd.bag, v);
                const auto& cbag = nice.nodes[c].bag;
                std::vector<int> cadj;
                for (size_t q = 0; q < cbag.size(); ++q)
                    if (g.has_edge(cbag[q], v)) cadj.push_back(static_cast<int>(q));
                for (uint64_t e = 0; e < kr[c].prod; ++e) {
                    int cc = tab[c][e];
                    if (cc >= kInf) continue;
                    kr[c].decode(e, cs);
                    for (int lam = 0; lam <= inst.d(v); ++lam) {
                        bool edge_ok = true;
                        bool witness = lam == 0;
                        for (int q : cadj) {
                            int m = state_mag(cs[q]);
                            if (std::abs(m - lam) > 1) {
                                edge_ok = false;
                                break;
                            }
                            if (m == lam - 1) witness = true;
                        }
                        if (!edge_ok) continue;
                        ps = cs;
                        for (int q : cadj)
                            if (!state_realized(ps[q]) && state_mag(ps[q]) == lam + 1)
                                ps[q] = make_state(lam + 1, true);
                        int vstate = make_state(lam, witness);
                        ps.insert(ps.begin() + pos, vstate);
                        uint64_t pe = kr[i].encode(ps);
                        int cand = cc + (lam == 0 ? 1 : 0);
                        if (cand < tab[i][pe]) {
                            tab[i][pe] = cand;
                            back[i][pe] = {static_cast<uint32_t>(e), 0,
                                           static_cast<uint8_t>(vstate)};
                        }
                    }
                }
                break;
            }
            case NiceKind::kForget: {
                int c = nd.left;
                int cpos = bag_position(nice.nodes[c].bag, nd.vertex);
                for (uint64_t e = 0; e < kr[c].prod; ++e) {
                    int cc = tab[c][e];
                    if (cc >= kInf) continue;
                    kr[c].decode(e, cs);
                    if (!state_realized(cs[cpos])) continue;
                    ps = cs;
                    ps.erase(ps.begin() + cpos);
                    uint64_t pe = kr[i].encode(ps);
                    if (cc < tab[i][pe]) {
                        tab[i][pe] = cc;
                        back[i][pe] = {static_cast<uint32_t>(e), 0, 0};
                    }
                }
                break;
            }
            case NiceKind::kJoin: {
                int c1 = nd.left, c2 = nd.right;
                int b = static_cast<int>(nd.bag.size());
                // Group entries by the unsigned label pattern; only
                // matching patterns combine.
                auto mag_key = [&](const std::vector<int>& s) {
                    uint64_t key = 0;
                    for (int q = b - 1; q >= 0; --q)
                        key = key * (inst.d(nd.bag[q]) + 1) + state_mag(s[q]);
                    return key;
                };
                std::map<uint64_t, std::vector<uint32_t>> buckets1, buckets2;
                for (uint64_t e = 0; e < kr[c1].prod; ++e)
                    if (tab[c1][e] < kInf) {
                        kr[c1].decode(e, cs);
                        buckets1[mag_key(cs)].push_back(static_cast<uint32_t>(e));
                    }
                for (uint64_t e = 0; e < kr[c2].prod; ++e)
                    if (tab[c2][e] < kInf) {
                        kr[c2].decode(e, cs);
                        buckets2[mag_key(cs)].push_back(static_cast<uint32_t>(e));
                    }
                std::vector<int> s1, s2;
                for (const auto& [key, list1] : buckets1) {
                    auto it = buckets2.find(key);
                    if (it == buckets2.end()) continue;
                    for (uint32_t e1 : list1) {
                        kr[c1].decode(e1, s1);
                        int cost1 = tab[c1][e1];
                        for (uint32_t e2 : it->second) {
                            kr[c2].decode(e2, s2);
                            int zeros = 0;
                            ps.resize(b);
                            for (int q = 0; q < b; ++q) {
                                int m = state_mag(s1[q]);
                                if (m == 0) ++zeros;
                                ps[q] = make_state(
                                    m, state_realized(s1[q]) || state_realized(s2[q]));
                            }
                            int cand = cost1 + tab[c2][e2] - zeros;
                            uint64_t pe = kr[i].encode(ps);
                            if (cand < tab[i][pe]) {
                                tab[i][pe] = cand;
                                back[i][pe] = {e1, e2, 0};
                            }
                        }
                    }
                }
                break;
            }
        }
    }

    void walk(int root, uint64_t root_entry) {
        std::vector<std::pair<int, uint64_t>> pending;
        pending.emplace_back(root, root_entry);
        while (!pending.empty()) {
            auto [i, entry] = pending.back();
            pending.pop_back();
            const NiceNode& nd = nice.nodes[i];
            const Back& bk = back[i][entry];
            switch (nd.kind) {
                case NiceKind::kLeaf:
                    break;
                case NiceKind::kIntroduce:
                    if (state_mag(bk.aux) == 0) picked[nd.vertex] = 1;
                    pending.emplace_back(nd.left, bk.a);
                    break;
                case NiceKind::kForget:
                    pending.emplace_back(nd.left, bk.a);
                    break;
                case NiceKind::kJoin:
                    pending.emplace_back(nd.left, bk.a);
                    pending.emplace_back(nd.right, bk.b);
                    break;
            }
        }
    }
};

Solution collect(const std::vector<char>& picked, const char* name, int width) {
    Solution sol;
    for (size_t v = 0; v < picked.size(); ++v)
        if (picked[v]) sol.selected.push_back(static_cast<int>(v));
    sol.algorithm = name;
    sol.proven_optimal = true;
    sol.width_used = width;
    return sol;
}

}  // namespace

Solution vd_tw_solve(const DvdInstance& inst, const TreeDecomposition& td, TwStats* stats) {
    if (!inst.uniform_radius_one())
        throw InapplicableError("vd solver needs radius one everywhere");
    validate_td(td, inst.graph());
    NiceTd nice = to_nice(td);
    int tau = inst.max_threshold();

    VdSolver solver(inst, nice);
    TwStats st;
    for (size_t i = 0; i < nice.nodes.size(); ++i) {
        const auto& bag = nice.nodes[i].bag;
        std::vector<int> radix;
        radix.reserve(bag.size());
        for (int v : bag) radix.push_back(inst.t(v) + 1);
        solver.kr[i].init(radix);
        uint64_t rows = sat_mul(uint64_t(1) << bag.size(), solver.kr[i].prod);
        uint64_t bound = sat_mul(sat_pow(2, static_cast<int>(bag.size())),
                                 sat_pow(tau + 1, static_cast<int>(bag.size())));
        st.max_rows = std::max(st.max_rows, rows);
        st.bound = std::max(st.bound, bound);
        if (rows > bound) st.bound_ok = false;
        if (rows > kTableCap)
            throw RefusalError("bag of " + std::to_string(bag.size()) +
                               " vertices needs " + std::to_string(rows) +
                               " table rows, cap is " + std::to_string(kTableCap));
    }
    for (size_t i = 0; i < nice.nodes.size(); ++i) solver.compute(static_cast<int>(i));
    if (stats) *stats = st;
    if (solver.tab[nice.root][0] >= kInf)
        throw SelfCheckError("domination failed even when selecting every vertex");
    solver.walk(nice.root, 0);
    return collect(solver.picked, "vd-tw", td.width());
}

Solution rd_tw_solve(const DvdInstance& inst, const TreeDecomposition& td, TwStats* stats) {
    if (!inst.uniform_threshold_one())
        throw InapplicableError("rd solver needs threshold one everywhere");
    validate_td(td, inst.graph());
    NiceTd nice = to_nice(td);
    int delta = inst.max_radius();

    RdSolver solver(inst, nice);
    TwStats st;
    for (size_t i = 0; i < nice.nodes.size(); ++i) {
        const auto& bag = nice.nodes[i].bag;
        std::vector<int> radix;
        radix.reserve(bag.size());
        for (int v : bag) radix.push_back(2 * inst.d(v) + 1);
        solver.kr[i].init(radix);
        uint64_t rows = solver.kr[i].prod;
        uint64_t bound = sat_pow(2 * delta + 1, static_cast<int>(bag.size()));
        st.max_rows = std::max(st.max_rows, rows);
        st.bound = std::max(st.bound, bound);
        if (rows > bound) st.bound_ok = false;
        if (rows > kTableCap)
            throw RefusalError("bag of " + std::to_string(bag.size()) +
                               " vertices needs " + std::to_string(rows) +
                               " table rows, cap is " + std::to_string(kTableCap));
    }
    for (size_t i = 0; i < nice.nodes.size(); ++i) solver.compute(static_cast<int>(i));
    if (stats) *stats = st;
    if (solver.tab[nice.root][0] >= kInf)
        throw SelfCheckError("domination failed even when selecting every vertex");
    solver.walk(nice.root, 0);
    return collect(solver.picked, "rd-tw", td.width());
}

}  // namespace dvd
