#include "dvd/mw.hpp"

#include <algorithm>
#include <climits>
#include <string>
#include <unordered_set>

#include <omp.h>

#include "combi.hpp"
#include "dvd/errors.hpp"

namespace dvd {

namespace {

std::vector<int> subtree_sizes(const ParseTree& pt) {
    std::vector<int> size(pt.nodes.size(), -1);
    auto fill = [&](auto&& self, int id) -> int {
        if (size[id] >= 0) return size[id];
        const ParseNode& nd = pt.nodes[id];
        int total = 0;
        if (nd.kind == NodeKind::kLeaf) {
            total = 1;
        } else {
            for (int c : nd.children) total += self(self, c);
        }
        return size[id] = total;
    };
    for (size_t i = 0; i < pt.nodes.size(); ++i) fill(fill, static_cast<int>(i));
    return size;
}

void require_width(const ParseTree& pt, int cap) {
    int w = parse_width(pt);
    if (w > cap)
        throw RefusalError("modular width " + std::to_string(w) + " exceeds cap " +
                           std::to_string(cap));
}

// Exact-budget domination decision over a parse subtree. `rho` is the
// demand discount earned from selections in adjacent sibling subtrees;
// it applies uniformly to every vertex below the node, so a scalar is
// enough. Discounts saturate at `cap` because anything at or above the
// largest demand behaves the same.
struct VdCtx {
    const ParseTree& pt;
    const std::vector<int>& base;
    const std::vector<int>& sizes;
    int cap;
    bool use_memo;
    std::unordered_set<uint64_t> failed;
    std::vector<int> picked;

    VdCtx(const ParseTree& pt_, const std::vector<int>& base_, const std::vector<int>& sizes_,
          bool memo)
        : pt(pt_), base(base_), sizes(sizes_) {
        cap = 0;
        for (size_t i = 0; i < pt.nodes.size(); ++i)
            if (pt.nodes[i].kind == NodeKind::kLeaf)
                cap = std::max(cap, base[pt.nodes[i].vertex]);
        use_memo = memo && pt.nodes.size() < (1 << 16) && cap < (1 << 16) &&
                   sizes[pt.root] < (1 << 16);
    }

    int clamp(int rho) const { return std::min(rho, cap); }

    bool decide(int node, int off, int rho, int b) {
        if (b < 0) return false;
        const ParseNode& nd = pt.nodes[node];
        if (nd.kind == NodeKind::kLeaf) {
            if (b == 0) return base[nd.vertex] - rho <= 0;
            if (b == 1) {
                picked.push_back(nd.vertex);
                return true;
            }
            return false;
        }
        uint64_t key = 0;
        if (use_memo) {
            key = (uint64_t(node) << 48) | (uint64_t(off) << 32) | (uint64_t(rho) << 16) |
                  uint64_t(b);
            if (failed.count(key)) return false;
        }
        bool ok = nd.kind == NodeKind::kSubst ? decide_subst(nd, rho, b)
                                              : decide_pairwise(node, nd, off, rho, b);
        if (!ok && use_memo) failed.insert(key);
        return ok;
    }

    // Union/Join with any number of children, handled as first child
    // versus the rest so budget splits stay binary.
    bool decide_pairwise(int node, const ParseNode& nd, int off, int rho, int b) {
        int k = static_cast<int>(nd.children.size());
        if (off == k - 1) return decide(nd.children[off], 0, rho, b);
        int a = nd.kind == NodeKind::kJoin ? 1 : 0;
        int cfirst = sizes[nd.children[off]];
        int crest = 0;
        for (int j = off + 1; j < k; ++j) crest += sizes[nd.children[j]];
        for (int b1 = 0; b1 <= std::min(b, cfirst); ++b1) {
            int b2 = b - b1;
            if (b2 > crest) continue;
            size_t mark = picked.size();
            if (decide(nd.children[off], 0, clamp(rho + a * b2), b1) &&
                decide(node, off + 1, clamp(rho + a * b1), b2))
                return true;
            picked.resize(mark);
        }
        return false;
    }

    bool decide_subst(const ParseNode& nd, int rho, int b) {
        int p = static_cast<int>(nd.children.size());
        std::vector<int> caps(p), sufcap(p + 1, 0);
        for (int i = 0; i < p; ++i) caps[i] = sizes[nd.children[i]];
        for (int i = p - 1; i >= 0; --i) sufcap[i] = sufcap[i + 1] + caps[i];
        std::vector<int> s(p, 0);
        auto eval = [&]() {
            size_t mark = picked.size();
            for (int i = 0; i < p; ++i) {
                int help = 0;
                for (int j = 0; j < p; ++j)
                    if (j != i && nd.quotient.has_edge(i, j)) help += s[j];
                if (!decide(nd.children[i], 0, clamp(rho + help), s[i])) {
                    picked.resize(mark);
                    return false;
                }
            }
            return true;
        };
        auto rec = [&](auto&& self, int i, int rem) -> bool {
            if (i == p - 1) {
                if (rem > caps[i]) return false;
                s[i] = rem;
                return eval();
            }
            int lo = std::max(0, rem - sufcap[i + 1]);
            for (s[i] = lo; s[i] <= std::min(caps[i], rem); ++s[i])
                if (self(self, i + 1, rem - s[i])) return true;
            return false;
        };
        return rec(rec, 0, b);
    }
};

Solution finish(std::vector<int> picked, const char* name, int width) {
    std::sort(picked.begin(), picked.end());
    Solution sol;
    sol.selected = std::move(picked);
    sol.algorithm = name;
    sol.proven_optimal = true;
    sol.width_used = width;
    return sol;
}

}  // namespace

bool rd_check(const DvdInstance& inst, const TopView& tv, const std::vector<int>& selection,
              std::vector<int>* out) {
    if (!inst.uniform_threshold_one())
        throw InapplicableError("module-set check needs threshold one everywhere");
    const Graph& g = inst.graph();
    int p = static_cast<int>(tv.modules.size());
    size_t mark = out ? out->size() : 0;
    for (int i = 0; i < p; ++i) {
        int li = INT_MAX;
        for (int j : selection)
            if (j != i) li = std::min(li, tv.hdist[i][j]);
        bool selected = std::binary_search(selection.begin(), selection.end(), i);
        const std::vector<int>& mod = tv.modules[i];
        if (!selected) {
            int mind = INT_MAX;
            for (int v : mod) mind = std::min(mind, inst.d(v));
            if (li > mind) {
                if (out) out->resize(mark);
                return false;
            }
            continue;
        }
        std::vector<int> tight;  // radius-one vertices no other module serves
        if (li > 1)
            for (int v : mod)
                if (inst.d(v) == 1) tight.push_back(v);
        int pick = -1;
        if (tight.empty()) {
            pick = mod[0];
        } else {
            for (int u : mod) {
                bool common = true;
                for (int v : tight)
                    if (u != v && !g.has_edge(u, v)) {
                        common = false;
                        break;
                    }
                if (common) {
                    pick = u;
                    break;
                }
            }
            if (pick == -1) {
                if (out) out->resize(mark);
                return false;
            }
        }
        if (out) out->push_back(pick);
    }
    return true;
}

Solution rd_mw_solve(const DvdInstance& inst, const MwOptions& opts) {
    if (!inst.uniform_threshold_one())
        throw InapplicableError("rd solver needs threshold one everywhere");
    ParseTree pt = compute_modular_parse(inst.graph());
    require_width(pt, opts.width_cap);
    TopView tv = top_view(pt);
    int p = static_cast<int>(tv.modules.size());

    detail::BinomTable bt(p);
    for (int s = 1; s <= p; ++s) {
        uint64_t total = detail::binom(p, s);
        uint64_t hit = UINT64_MAX;
        if (!opts.parallel || total < 1024) {
            std::vector<int> idx(s);
            for (int i = 0; i < s; ++i) idx[i] = i;
            uint64_t rank = 0;
            do {
                if (rd_check(inst, tv, idx, nullptr)) {
                    hit = rank;
                    break;
                }
                ++rank;
            } while (detail::next_lex(idx, p));
        } else {
#pragma omp parallel
            {
                int tid = omp_get_thread_num();
                int nt = omp_get_num_threads();
                uint64_t chunk = (total + nt - 1) / nt;
                uint64_t lo = std::min<uint64_t>(total, tid * chunk);
                uint64_t hi = std::min<uint64_t>(total, (tid + 1) * chunk);
                uint64_t found = UINT64_MAX;
                if (lo < hi) {
                    auto idx = detail::unrank_lex(bt, lo, p, s);
                    for (uint64_t r = lo; r < hi; ++r) {
                        if (rd_check(inst, tv, idx, nullptr)) {
                            found = r;
                            break;
                        }
                        detail::next_lex(idx, p);
                    }
                }
#pragma omp critical
                hit = std::min(hit, found);
            }
        }
        if (hit != UINT64_MAX) {
            auto idx = detail::unrank_lex(bt, hit, p, s);
            std::vector<int> picked;
            rd_check(inst, tv, idx, &picked);
            return finish(std::move(picked), "rd-mw", parse_width(pt));
        }
    }
    throw SelfCheckError("module-set scan rejected even the full selection");
}

bool vd_mw_decide(const DvdInstance& inst, const ParseTree& pt, int budget,
                  const MwOptions& opts, std::vector<int>* out) {
    if (!inst.uniform_radius_one())
        throw InapplicableError("vd solver needs radius one everywhere");
    require_width(pt, opts.width_cap);
    if (budget < 0 || budget > inst.num_vertices()) return false;
    auto sizes = subtree_sizes(pt);
    VdCtx ctx(pt, inst.thresholds(), sizes, opts.memo);
    if (!ctx.decide(pt.root, 0, 0, budget)) return false;
    if (out) {
        std::sort(ctx.picked.begin(), ctx.picked.end());
        out->insert(out->end(), ctx.picked.begin(), ctx.picked.end());
    }
    return true;
}

Solution vd_mw_solve(const DvdInstance& inst, const MwOptions& opts) {
    if (!inst.uniform_radius_one())
        throw InapplicableError("vd solver needs radius one everywhere");
    if (inst.num_vertices() == 0) return finish({}, "vd-mw", 1);
    ParseTree pt = compute_modular_parse(inst.graph());
    require_width(pt, opts.width_cap);
    auto sizes = subtree_sizes(pt);
    for (int b = 0; b <= inst.num_vertices(); ++b) {
        VdCtx ctx(pt, inst.thresholds(), sizes, opts.memo);
        if (ctx.decide(pt.root, 0, 0, b))
            return finish(std::move(ctx.picked), "vd-mw", parse_width(pt));
    }
    throw SelfCheckError("domination failed even when selecting every vertex");
}

Solution dvd_mw_solve(const DvdInstance& inst, const MwOptions& opts) {
    if (inst.num_vertices() == 0) return finish({}, "dvd-mw", 1);
    ParseTree pt = compute_modular_parse(inst.graph());
    require_width(pt, opts.width_cap);
    TopView tv = top_view(pt);
    const ParseNode& root = pt.nodes[pt.root];
    int p = static_cast<int>(tv.modules.size());
    auto sizes = subtree_sizes(pt);
    int n = inst.num_vertices();

    std::vector<int> caps(p), sufcap(p + 1, 0), child_of(p);
    for (int i = 0; i < p; ++i) {
        caps[i] = static_cast<int>(tv.modules[i].size());
        child_of[i] = root.kind == NodeKind::kLeaf ? pt.root : root.children[i];
    }
    for (int i = p - 1; i >= 0; --i) sufcap[i] = sufcap[i + 1] + caps[i];

    std::vector<int> base(n, 0);
    std::vector<int> s(p, 0);
    std::vector<int> picked;

    auto try_composition = [&]() -> bool {
        picked.clear();
        // Count-level screening first: a vertex with radius >= 2 sees
        // its whole module (distance at most 2) and every module within
        // quotient distance of its radius. A vertex the counts cannot
        // satisfy must itself be selected, which the demand sentinel
        // 2|module|+2 forces; more such vertices than the module's
        // budget kills the composition outright.
        for (int i = 0; i < p; ++i) {
            int forced = 0;
            for (int v : tv.modules[i]) {
                if (inst.d(v) >= 2) {
                    int reach = s[i];
                    for (int j = 0; j < p; ++j)
                        if (j != i && tv.hdist[i][j] <= inst.d(v)) reach += s[j];
                    if (inst.t(v) > reach) {
                        base[v] = 2 * caps[i] + 2;
                        ++forced;
                    } else {
                        base[v] = 0;
                    }
                } else {
                    int help = 0;
                    for (int j = 0; j < p; ++j)
                        if (j != i && tv.hdist[i][j] == 1) help += s[j];
                    base[v] = std::max(0, inst.t(v) - help);
                }
            }
            if (forced > s[i]) return false;
        }
        for (int i = 0; i < p; ++i) {
            VdCtx ctx(pt, base, sizes, opts.memo);
            if (!ctx.decide(child_of[i], 0, 0, s[i])) return false;
            picked.insert(picked.end(), ctx.picked.begin(), ctx.picked.end());
        }
        return true;
    };

    for (int b = 0; b <= n; ++b) {
        auto rec = [&](auto&& self, int i, int rem) -> bool {
            if (i == p - 1) {
                if (rem > caps[i]) return false;
                s[i] = rem;
                return try_composition();
            }
            int lo = std::max(0, rem - sufcap[i + 1]);
            for (s[i] = lo; s[i] <= std::min(caps[i], rem); ++s[i])
                if (self(self, i + 1, rem - s[i])) return true;
            return false;
        };
        if (rec(rec, 0, b)) return finish(std::move(picked), "dvd-mw", parse_width(pt));
    }
    throw SelfCheckError("domination failed even when selecting every vertex");
}

}  // namespace dvd
