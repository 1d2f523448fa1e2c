#pragma once

#include <cstdint>
#include <vector>

// Lexicographic k-subset enumeration helpers shared by the exhaustive
// solvers. Counts are exact for m <= 64.

namespace dvd::detail {

inline uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    uint64_t num = 1;
    for (int i = 0; i < k; ++i) num = num * (n - i) / (i + 1);
    return num;
}

struct BinomTable {
    int m;
    std::vector<uint64_t> c;
    explicit BinomTable(int m_) : m(m_), c(static_cast<size_t>(m + 1) * (m + 1), 0) {
        for (int n = 0; n <= m; ++n) {
            at(n, 0) = 1;
            for (int k = 1; k <= n; ++k)
                at(n, k) = at(n - 1, k - 1) + (k <= n - 1 ? at(n - 1, k) : 0);
        }
    }
    uint64_t& at(int n, int k) { return c[static_cast<size_t>(n) * (m + 1) + k]; }
    uint64_t get(int n, int k) const {
        return (k < 0 || k > n) ? 0 : c[static_cast<size_t>(n) * (m + 1) + k];
    }
};

// Index tuple of the rank-th k-subset of {0..m-1}, lexicographic order.
inline std::vector<int> unrank_lex(const BinomTable& bt, uint64_t rank, int m, int k) {
    std::vector<int> idx(k);
    int prev = -1;
    for (int i = 0; i < k; ++i) {
        int c = prev + 1;
        while (true) {
            uint64_t block = bt.get(m - 1 - c, k - 1 - i);
            if (rank < block) break;
            rank -= block;
            ++c;
        }
        idx[i] = c;
        prev = c;
    }
    return idx;
}

// Advances to the lexicographic successor; false after the last subset.
inline bool next_lex(std::vector<int>& idx, int m) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline uint64_t to_mask(const std::vector<int>& idx) {
    uint64_t mask = 0;
    for (int i : idx) mask |= uint64_t(1) << i;
    return mask;
}

}  // namespace dvd::detail
