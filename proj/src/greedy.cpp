#include "dvd/greedy.hpp"

#include <algorithm>

namespace dvd {

Solution greedy_dvd(const DvdInstance& inst) {
    int n = inst.num_vertices();
    const Graph& g = inst.graph();

    // watchers[u] = vertices whose ball contains u.
    std::vector<std::vector<int>> watchers(n);
    for (int w = 0; w < n; ++w) {
        if (inst.t(w) == 0) continue;
        for (int u : ball(g, w, inst.d(w))) watchers[u].push_back(w);
    }

    std::vector<int> cov(n, 0);
    std::vector<char> selected(n, 0);
    int deficient = 0;
    for (int v = 0; v < n; ++v)
        if (inst.t(v) > 0) ++deficient;

    Solution sol;
    sol.algorithm = "greedy";
    while (deficient > 0) {
        int best = -1;
        long best_gain = -1;
        for (int u = 0; u < n; ++u) {
            if (selected[u]) continue;
            long gain = inst.t(u) - std::min(inst.t(u), cov[u]);
            for (int w : watchers[u])
                if (!selected[w] && cov[w] < inst.t(w)) ++gain;
            // u watches itself only through the selection bonus, which
            // the first term already counts.
            if (gain > best_gain) {
                best_gain = gain;
                best = u;
            }
        }
        selected[best] = 1;
        sol.selected.push_back(best);
        if (cov[best] < inst.t(best)) --deficient;
        for (int w : watchers[best]) {
            if (!selected[w] && cov[w] == inst.t(w) - 1) --deficient;
            ++cov[w];
        }
        // A watcher that was already selected keeps its bonus; cov still
        // tracks true coverage for vertices selected later.
    }
    std::sort(sol.selected.begin(), sol.selected.end());
    return sol;
}

}  // namespace dvd
