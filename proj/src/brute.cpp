#include "dvd/brute.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include <omp.h>

#include "combi.hpp"
#include "dvd/errors.hpp"

namespace dvd {

namespace {

using detail::BinomTable;
using detail::binom;
using detail::next_lex;
using detail::to_mask;
using detail::unrank_lex;

struct MaskChecker {
    int n;
    std::vector<int> cand_bit;    // per vertex: bit position or -1
    std::vector<uint64_t> cover;  // per vertex: candidates within its ball
    std::vector<int> need;

    bool valid(uint64_t mask) const {
        for (int v = 0; v < n; ++v) {
            if (need[v] == 0) continue;
            if (cand_bit[v] >= 0 && ((mask >> cand_bit[v]) & 1)) continue;
            if (std::popcount(cover[v] & mask) < need[v]) return false;
        }
        return true;
    }
};

}  // namespace

std::optional<Solution> brute_force_min_dvd(const DvdInstance& inst, const BruteOptions& opts) {
    int n = inst.num_vertices();
    if (n > opts.max_n)
        throw RefusalError("brute force: graph has " + std::to_string(n) +
                           " vertices, cap is " + std::to_string(opts.max_n));

    std::vector<int> pool;
    if (opts.pool) {
        pool = *opts.pool;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (pool[i] < 0 || pool[i] >= n)
                throw ParseError("brute force: pool vertex out of range");
            if (i > 0 && pool[i] <= pool[i - 1])
                throw ParseError("brute force: pool must be sorted and duplicate-free");
        }
    } else {
        pool.resize(n);
        for (int v = 0; v < n; ++v) pool[v] = v;
    }
    int m = static_cast<int>(pool.size());
    if (m > 64) throw RefusalError("brute force: candidate pool exceeds 64 vertices");

    MaskChecker chk;
    chk.n = n;
    chk.cand_bit.assign(n, -1);
    for (int i = 0; i < m; ++i) chk.cand_bit[pool[i]] = i;
    chk.cover.assign(n, 0);
    chk.need = inst.thresholds();
    for (int v = 0; v < n; ++v) {
        if (chk.need[v] == 0) continue;
        for (int u : ball(inst.graph(), v, inst.d(v)))
            if (chk.cand_bit[u] >= 0) chk.cover[v] |= uint64_t(1) << chk.cand_bit[u];
    }

    BinomTable bt(m);
    int kmax = m;
    if (opts.size_cap) kmax = std::min(kmax, std::max(0, *opts.size_cap));

    auto build = [&](const std::vector<int>& idx) {
        Solution sol;
        for (int i : idx) sol.selected.push_back(pool[i]);
        sol.algorithm = "brute";
        sol.proven_optimal = true;
        return sol;
    };

    const uint64_t kBlock = 1 << 18;
    for (int k = 0; k <= kmax; ++k) {
        uint64_t total = binom(m, k);
        if (!opts.parallel || total < 4096) {
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                if (chk.valid(to_mask(idx))) return build(idx);
                if (!next_lex(idx, m)) break;
            }
            continue;
        }
        for (uint64_t base = 0; base < total; base += kBlock) {
            uint64_t count = std::min(kBlock, total - base);
            uint64_t best = UINT64_MAX;
#pragma omp parallel
            {
                int tid = omp_get_thread_num();
                int nt = omp_get_num_threads();
                uint64_t chunk = (count + nt - 1) / nt;
                uint64_t lo = std::min<uint64_t>(count, tid * chunk);
                uint64_t hi = std::min<uint64_t>(count, (tid + 1) * chunk);
                uint64_t found = UINT64_MAX;
                if (lo < hi) {
                    auto idx = unrank_lex(bt, base + lo, m, k);
                    for (uint64_t r = base + lo; r < base + hi; ++r) {
                        if (chk.valid(to_mask(idx))) {
                            found = r;
                            break;
                        }
                        next_lex(idx, m);
                    }
                }
#pragma omp critical
                best = std::min(best, found);
            }
            if (best != UINT64_MAX) return build(unrank_lex(bt, best, m, k));
        }
    }
    return std::nullopt;
}

}  // namespace dvd
